// Planar five-fold orbits in two models: cyclotomic integers under the
// lifted dihedral group and its holomorph extension, and root-basis lattice
// points under the matching chain of integer matrix groups.

#include <cstdio>

#include "orbshell/dihedral.hpp"

using namespace orbshell;

int main() {
  CycInt z(5, {1, 2, 4, 3, 0});
  HolGroup hol = hol_group(5);

  auto show = [](const char* name, const PlanarOrbit& po) {
    std::printf("%s: %zu points\n", name, po.total_points);
    for (size_t li = 0; li < po.layers.size(); ++li) {
      const PlanarLayer& l = po.layers[li];
      std::printf("  level %zu: %3zu points, |z|^2 = %s\n", li + 1,
                  l.points.size(), to_exact_string(l.rad2_exact).c_str());
    }
  };
  show("dihedral orbit of 1 + 2x + 4x^2 + 3x^3",
       lift_and_orbit(5, hol_dihedral(hol), z));
  show("holomorph orbit", lift_and_orbit(5, hol.elements, z));

  std::printf("\nroot-basis chain for seed (1,2,4,3):\n");
  A4Chain chain = a4_case();
  auto show4 = [](const char* name, const A4Orbit& o) {
    std::printf("%s (%zu points):", name, o.total_points);
    const QTau unit = inverse(QTau{6, -2});
    for (const A4Layer& l : o.layers)
      std::printf(" [%zu pts, r^2 = %s]", l.points4.size(),
                  to_exact_string(to_qtau(l.rad2) * unit).c_str());
    std::printf("\n");
  };
  Vec4 seed{1, 2, 4, 3};
  show4("  order-10 dihedral ", a4_orbit(chain.h, seed));
  show4("  order-20 extension", a4_orbit(chain.k, seed));
  show4("  order-120 lattice ", a4_orbit(chain.lambda, seed));
  return 0;
}
