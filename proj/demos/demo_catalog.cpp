// Prints the subgroup catalog between the icosahedral rotation group and
// the full signed-permutation group, with its inclusion diagram.

#include <cstdio>

#include "orbshell/icosa.hpp"

using namespace orbshell;

int main() {
  Catalog cat = build_catalog(true);
  std::printf("%-5s %8s %8s  generators\n", "label", "order", "index");
  for (const CatalogEntry& e : cat.entries) {
    std::printf("%-5s %8zu %8zu  ", e.label.c_str(), e.group.order(),
                e.index_over_icosa);
    for (size_t i = 0; i < e.gen_cycles.size(); ++i)
      std::printf("%s%s", i ? "  " : "", e.gen_cycles[i].c_str());
    std::printf("\n");
  }

  std::printf("\ncover relations:\n");
  for (auto [a, b] : cat.hasse)
    std::printf("  %s < %s\n", cat.entries[a].label.c_str(),
                cat.entries[b].label.c_str());

  std::printf("\nall inclusions: %zu pairs\n", cat.inclusions.size());
  return 0;
}
