#ifndef ORBSHELL_CAPSID_HPP_
#define ORBSHELL_CAPSID_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "orbshell/base.hpp"
#include "orbshell/icosa.hpp"
#include "orbshell/shells.hpp"

namespace orbshell {

using Point3 = std::array<double, 3>;
using RotMat = std::array<std::array<double, 3>, 3>;

inline double dist2(const Point3& a, const Point3& b) {
  double s = 0;
  for (int i = 0; i < 3; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}
inline double norm3(const Point3& a) {
  return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
}

// The 60 rotations of physical space realized by the embedded rotation
// group, as floats.
inline std::vector<RotMat> rotation_matrices(const IcosaEmbedding& emb) {
  std::vector<RotMat> rots;
  rots.reserve(emb.icosa.order());
  for (const SignedPerm& g : emb.icosa.elements) {
    Mat3T t = emb.t1x2(g);
    RotMat r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r[i][j] = to_double(t[i][j]) / 2.0;
    rots.push_back(r);
  }
  return rots;
}

inline Point3 rotate(const RotMat& r, const Point3& p) {
  Point3 q{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) q[i] += r[i][j] * p[j];
  return q;
}

struct PdbAtom {
  Point3 xyz{};
  std::string name;
  std::string resname;
  char chain = ' ';
};

struct Cluster {
  Point3 centroid{};
  size_t members = 0;
};

struct CapsidModel {
  std::vector<PdbAtom> atoms;     // as read (asymmetric unit if unexpanded)
  std::vector<Point3> calpha;     // possibly symmetry-expanded
  std::vector<Point3> genome;     // nucleotide-residue atoms, same expansion
  double max_radius = 0;
  std::vector<Cluster> clusters;  // filled by surface_clusters
};

namespace detail {

inline std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline double parse_coord(const std::string& line, size_t pos, size_t len,
                          size_t lineno) {
  std::string f = trim(line.substr(pos, len));
  try {
    size_t used = 0;
    double v = std::stod(f, &used);
    if (used != f.size()) throw std::invalid_argument(f);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(lineno) +
                     ": bad coordinate field '" + f + "'");
  }
}

inline bool nucleotide_residue(const std::string& resname) {
  static const char* names[] = {"A",  "U",  "G",  "C",  "I",   "DA",  "DT",
                                "DG", "DC", "DU", "RA", "RU",  "RG",  "RC",
                                "ADE", "URA", "GUA", "CYT", "THY"};
  for (const char* n : names)
    if (resname == n) return true;
  return false;
}

}  // namespace detail

// Fixed-column ATOM records per the PDB format: name in columns 13-16,
// altLoc 17, resName 18-20, chain 22, x/y/z in 31-38/39-46/47-54 (1-based).
inline CapsidModel ingest_pdb(const std::string& path, bool expand_symmetry,
                              const std::vector<RotMat>& rotations = {}) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  CapsidModel model;
  std::vector<Point3> calpha_unit, genome_unit;
  std::string line;
  size_t lineno = 0;
  size_t atom_records = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.rfind("ATOM", 0) != 0) continue;
    if (line.size() >= 6 && line[4] != ' ' && line[4] != '\t' &&
        line.compare(0, 6, "ATOM  ") != 0)
      continue;  // e.g. "ATOMIC" remark tokens
    ++atom_records;
    if (line.size() < 54)
      throw ParseError("line " + std::to_string(lineno) +
                       ": truncated ATOM record");
    PdbAtom a;
    a.name = detail::trim(line.substr(12, 4));
    char altloc = line[16];
    a.resname = detail::trim(line.substr(17, 3));
    a.chain = line[21];
    a.xyz[0] = detail::parse_coord(line, 30, 8, lineno);
    a.xyz[1] = detail::parse_coord(line, 38, 8, lineno);
    a.xyz[2] = detail::parse_coord(line, 46, 8, lineno);
    model.atoms.push_back(a);
    bool alt_ok = altloc == ' ' || altloc == 'A';
    if (a.name == "CA" && alt_ok) calpha_unit.push_back(a.xyz);
    if (detail::nucleotide_residue(a.resname) && alt_ok)
      genome_unit.push_back(a.xyz);
  }
  if (atom_records == 0) throw EmptyModel("no ATOM records in '" + path + "'");
  if (calpha_unit.empty())
    throw EmptyModel("no alpha-carbon atoms in '" + path + "'");

  if (expand_symmetry) {
    check(rotations.size() == 60, "symmetry expansion needs the 60 rotations");
    for (const RotMat& r : rotations) {
      for (const Point3& p : calpha_unit) model.calpha.push_back(rotate(r, p));
      for (const Point3& p : genome_unit) model.genome.push_back(rotate(r, p));
    }
  } else {
    model.calpha = calpha_unit;
    model.genome = genome_unit;
  }
  for (const Point3& p : model.calpha)
    model.max_radius = std::max(model.max_radius, norm3(p));
  return model;
}

namespace detail {

// Uniform-grid spatial index for nearest-neighbor queries over fixed points.
struct PointGrid {
  double cell = 8.0;
  const std::vector<Point3>* pts = nullptr;
  std::unordered_map<uint64_t, std::vector<uint32_t>> cells;

  static uint64_t key(int64_t x, int64_t y, int64_t z) {
    auto u = [](int64_t v) {
      return static_cast<uint64_t>(v + (1 << 20)) & 0x1fffff;
    };
    return (u(x) << 42) | (u(y) << 21) | u(z);
  }
  void build(const std::vector<Point3>& p, double cell_size) {
    cell = cell_size;
    pts = &p;
    cells.clear();
    for (uint32_t i = 0; i < p.size(); ++i) {
      int64_t cx = static_cast<int64_t>(std::floor(p[i][0] / cell));
      int64_t cy = static_cast<int64_t>(std::floor(p[i][1] / cell));
      int64_t cz = static_cast<int64_t>(std::floor(p[i][2] / cell));
      cells[key(cx, cy, cz)].push_back(i);
    }
  }
  // Smallest distance from q to any indexed point.
  double nearest(const Point3& q) const {
    check(pts && !pts->empty(), "nearest neighbor over an empty set");
    int64_t cx = static_cast<int64_t>(std::floor(q[0] / cell));
    int64_t cy = static_cast<int64_t>(std::floor(q[1] / cell));
    int64_t cz = static_cast<int64_t>(std::floor(q[2] / cell));
    double best2 = std::numeric_limits<double>::infinity();
    for (int64_t ring = 0;; ++ring) {
      bool any_cell = false;
      for (int64_t dx = -ring; dx <= ring; ++dx)
        for (int64_t dy = -ring; dy <= ring; ++dy)
          for (int64_t dz = -ring; dz <= ring; ++dz) {
            if (std::max({std::llabs(dx), std::llabs(dy), std::llabs(dz)}) !=
                ring)
              continue;
            auto it = cells.find(key(cx + dx, cy + dy, cz + dz));
            if (it == cells.end()) continue;
            any_cell = true;
            for (uint32_t i : it->second)
              best2 = std::min(best2, dist2(q, (*pts)[i]));
          }
      // Points in rings beyond `ring` lie at distance > ring*cell.
      if (best2 <= static_cast<double>(ring) * cell * (ring * cell))
        return std::sqrt(best2);
      if (ring > 2 && any_cell == false &&
          best2 < std::numeric_limits<double>::infinity())
        return std::sqrt(best2);
      if (ring * cell > 1e7) return std::sqrt(best2);  // degenerate guard
    }
  }
};

struct UnionFind {
  std::vector<uint32_t> parent;
  explicit UnionFind(size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  uint32_t find(uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(uint32_t a, uint32_t b) { parent[find(a)] = find(b); }
};

}  // namespace detail

// Radially distal surface extraction: keep atoms at radius >= fraction of
// the maximum, then join by single linkage at the given cutoff.
inline std::vector<Cluster> surface_clusters(CapsidModel& model,
                                             double radial_fraction = 0.95,
                                             double linkage_cutoff = 8.0) {
  std::vector<Point3> surf;
  for (const Point3& p : model.calpha)
    if (norm3(p) >= radial_fraction * model.max_radius) surf.push_back(p);
  if (surf.empty())
    throw NoSurface("no atoms above " + std::to_string(radial_fraction) +
                    " of the maximal radius");
  detail::PointGrid grid;
  grid.build(surf, linkage_cutoff);
  detail::UnionFind uf(surf.size());
  double c2 = linkage_cutoff * linkage_cutoff;
  for (uint32_t i = 0; i < surf.size(); ++i) {
    int64_t cx = static_cast<int64_t>(std::floor(surf[i][0] / grid.cell));
    int64_t cy = static_cast<int64_t>(std::floor(surf[i][1] / grid.cell));
    int64_t cz = static_cast<int64_t>(std::floor(surf[i][2] / grid.cell));
    for (int64_t dx = -1; dx <= 1; ++dx)
      for (int64_t dy = -1; dy <= 1; ++dy)
        for (int64_t dz = -1; dz <= 1; ++dz) {
          auto it = grid.cells.find(
              detail::PointGrid::key(cx + dx, cy + dy, cz + dz));
          if (it == grid.cells.end()) continue;
          for (uint32_t j : it->second)
            if (j > i && dist2(surf[i], surf[j]) <= c2) uf.unite(i, j);
        }
  }
  std::unordered_map<uint32_t, Cluster> acc;
  for (uint32_t i = 0; i < surf.size(); ++i) {
    Cluster& c = acc[uf.find(i)];
    for (int t = 0; t < 3; ++t) c.centroid[t] += surf[i][t];
    ++c.members;
  }
  std::vector<Cluster> out;
  for (auto& [root, c] : acc) {
    for (int t = 0; t < 3; ++t) c.centroid[t] /= static_cast<double>(c.members);
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) {
    return a.centroid < b.centroid;
  });
  model.clusters = out;
  return out;
}

struct LayerFit {
  double radius = 0;  // scaled, in angstroms
  size_t points = 0;
  double mean_calpha_dist = 0;
  double min_calpha_dist = 0;
  double mean_genome_dist = -1;  // -1 when no genome atoms present
};

struct FitResult {
  Vec6 seed{};
  std::string group_label;
  double scale = 0;
  double outer_match = 0;  // fraction of outer points inside some sphere
  bool selected = false;
  double score = 0;  // mean inner-layer distance to nearest material atom
  std::vector<LayerFit> layer_stats;
};

// Scales the array so its outermost layer touches the outermost cluster
// centroids, tests every outer point against spheres of radius r_tilde
// around the centroids, and reports per-layer distance statistics.
inline FitResult fit_array(const PointArray& array, const CapsidModel& model,
                           double r_tilde = 10.0) {
  check(!array.layers.empty(), "empty array cannot be fitted");
  check(!model.clusters.empty(), "surface clusters are required first");
  FitResult fr;
  fr.seed = array.seed;
  fr.group_label = array.group_label;

  double rmax_model = 0;
  for (const Cluster& c : model.clusters)
    rmax_model = std::max(rmax_model, norm3(c.centroid));
  double rmax_array = array.radius_of(array.layers.back());
  check(rmax_array > 0, "outer layer must have positive radius");
  fr.scale = rmax_model / rmax_array;

  std::vector<Point3> centroids;
  for (const Cluster& c : model.clusters) centroids.push_back(c.centroid);
  detail::PointGrid cluster_grid, calpha_grid, genome_grid, material_grid;
  cluster_grid.build(centroids, std::max(8.0, r_tilde));
  calpha_grid.build(model.calpha, 8.0);
  std::vector<Point3> material = model.calpha;
  material.insert(material.end(), model.genome.begin(), model.genome.end());
  material_grid.build(material, 8.0);
  if (!model.genome.empty()) genome_grid.build(model.genome, 8.0);

  double inner_sum = 0;
  size_t inner_layers = 0;
  for (size_t li = 0; li < array.layers.size(); ++li) {
    const Layer& layer = array.layers[li];
    LayerFit lf;
    lf.radius = fr.scale * array.radius_of(layer);
    lf.points = layer.points.size();
    double sum = 0, mn = std::numeric_limits<double>::infinity(), gsum = 0;
    size_t matched = 0;
    for (const ZTau3& pz : layer.points) {
      Point3 p;
      double unit = fr.scale / std::sqrt(to_double(ZTau{4, 2}));
      for (int i = 0; i < 3; ++i) p[i] = to_double(pz[i]) * unit;
      double d = calpha_grid.nearest(p);
      sum += d;
      mn = std::min(mn, d);
      if (!model.genome.empty()) gsum += genome_grid.nearest(p);
      if (li + 1 == array.layers.size() &&
          cluster_grid.nearest(p) <= r_tilde)
        ++matched;
    }
    lf.mean_calpha_dist = sum / static_cast<double>(lf.points);
    lf.min_calpha_dist = mn;
    if (!model.genome.empty())
      lf.mean_genome_dist = gsum / static_cast<double>(lf.points);
    if (li + 1 == array.layers.size()) {
      fr.outer_match =
          static_cast<double>(matched) / static_cast<double>(lf.points);
    } else {
      double msum = 0;
      for (const ZTau3& pz : layer.points) {
        Point3 p;
        double unit = fr.scale / std::sqrt(to_double(ZTau{4, 2}));
        for (int i = 0; i < 3; ++i) p[i] = to_double(pz[i]) * unit;
        msum += material_grid.nearest(p);
      }
      inner_sum += msum / static_cast<double>(lf.points);
      ++inner_layers;
    }
    fr.layer_stats.push_back(lf);
  }
  fr.selected = fr.outer_match >= 1.0;
  // Arrays with a single layer have no interior; score on the outer shell.
  fr.score = inner_layers ? inner_sum / static_cast<double>(inner_layers)
                          : fr.layer_stats.back().mean_calpha_dist;
  return fr;
}

// Fits every library entry: selected arrays first, ordered by ascending
// inner-layer material distance; unselected arrays follow, ordered by
// descending outer match. Ties resolve by group label then seed.
inline std::vector<FitResult> rank_library(const Library& lib,
                                           const CapsidModel& model,
                                           double r_tilde = 10.0) {
  std::vector<FitResult> results;
  for (const LibraryEntry& le : lib.entries) {
    if (le.array.total_points <= 1) continue;  // origin-only array
    results.push_back(fit_array(le.array, model, r_tilde));
  }
  std::sort(results.begin(), results.end(),
            [](const FitResult& a, const FitResult& b) {
              if (a.selected != b.selected) return a.selected;
              if (a.selected) {
                if (a.score != b.score) return a.score < b.score;
              } else if (a.outer_match != b.outer_match) {
                return a.outer_match > b.outer_match;
              }
              if (a.group_label != b.group_label)
                return a.group_label < b.group_label;
              return a.seed < b.seed;
            });
  return results;
}

}  // namespace orbshell

#endif
