// Builds the two case-study point arrays and prints their radial level
// structure with exact radii and angular cluster censuses.

#include <cmath>
#include <cstdio>
#include <map>
#include <string>

#include "orbshell/export.hpp"

using namespace orbshell;

namespace {

// Nearest end over an arbitrary end list, plus the worst best-vs-second gap.
std::pair<std::map<size_t, size_t>, double> nearest_census(
    const std::vector<ZTau3>& pts, const std::vector<AxisEnd>& ends,
    size_t limit) {
  std::vector<size_t> per_end(limit, 0);
  double worst = 2.0;
  for (const ZTau3& p : pts) {
    double v[3], nn = 0;
    for (int i = 0; i < 3; ++i) {
      v[i] = to_double(p[i]);
      nn += v[i] * v[i];
    }
    nn = std::sqrt(nn);
    double best = -2.0, second = -2.0;
    size_t best_e = 0;
    for (size_t e = 0; e < limit; ++e) {
      double d = 0;
      for (int i = 0; i < 3; ++i) d += v[i] / nn * ends[e].unit[i];
      if (d > best + 1e-12) {
        second = best;
        best = d;
        best_e = e;
      } else if (d > second) {
        second = d;
      }
    }
    worst = std::min(worst, best - second);
    ++per_end[best_e];
  }
  std::map<size_t, size_t> census;
  for (size_t e = 0; e < limit; ++e)
    if (per_end[e]) ++census[per_end[e]];
  return {census, worst};
}

std::string census_str(const std::map<size_t, size_t>& census) {
  std::string cs;
  for (auto it = census.rbegin(); it != census.rend(); ++it) {
    if (!cs.empty()) cs += ", ";
    cs += std::to_string(it->second) + "x" + std::to_string(it->first);
  }
  return cs;
}

void show(const PointArray& pa, const std::vector<AxisEnd>& ends) {
  std::printf("group %s, seed (", pa.group_label.c_str());
  for (size_t i = 0; i < pa.seed.size(); ++i)
    std::printf("%s%lld", i ? "," : "", static_cast<long long>(pa.seed[i]));
  std::printf("): %zu points on %zu levels\n", pa.total_points,
              pa.layers.size());
  std::printf("  %-5s %6s %14s %22s  clusters\n", "level", "count", "radius",
              "radius^2 (exact)");
  for (size_t li = 0; li < pa.layers.size(); ++li) {
    const Layer& l = pa.layers[li];
    auto [c32, margin] = nearest_census(l.points, ends, 32);
    std::string cs;
    if (margin < 1e-9) {
      // Points equidistant from five- and three-fold ends; report the
      // unambiguous assignment over all 62 ends instead.
      auto [c62, m62] = nearest_census(l.points, ends, ends.size());
      (void)m62;
      cs = census_str(c62) + " over all 62 ends (5f/3f assignment ties exactly)";
    } else {
      cs = census_str(capsomer_clusters(l.points, ends));
    }
    std::printf("  %-5zu %6zu %14.9f %22s  %s\n", li + 1, l.points.size(),
                pa.radius_of(l), exact_str(l.rad2).c_str(), cs.c_str());
  }
  std::printf("\n");
}

}  // namespace

int main() {
  IcosaEmbedding emb = build_embedding();
  Catalog cat = build_catalog(true);
  std::vector<AxisEnd> ends = axis_ends(emb);

  // Pariacoto virus: all 960 points of the (G6, (2,1,-1,-1,0,0)) array.
  show(build_point_array(cat.entries[5].group, Vec6{2, 1, -1, -1, 0, 0}, emb,
                         "G6"),
       ends);

  // Bacteriophage MS2: the (G4, (2,1,1,-1,0,1)) array.
  show(build_point_array(cat.entries[3].group, Vec6{2, 1, 1, -1, 0, 1}, emb,
                         "G4"),
       ends);
  return 0;
}
