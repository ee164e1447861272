#ifndef ORBSHELL_EXPORT_HPP_
#define ORBSHELL_EXPORT_HPP_

#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"
#include "orbshell/capsid.hpp"
#include "orbshell/dihedral.hpp"
#include "orbshell/hull.hpp"
#include "orbshell/icosa.hpp"
#include "orbshell/shells.hpp"

namespace orbshell {

using Json = nlohmann::ordered_json;

// JSON is the canonical output model; CSV, OFF and pseudo-PDB renderings
// below are conversions of the same data. All iteration orders are fixed by
// the underlying containers, so serialization is byte-stable across runs.

inline std::string exact_str(const ZTau& z) {
  return to_exact_string(to_qtau(z));
}

namespace detail {

inline std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

}  // namespace detail

inline Json catalog_json(const Catalog& cat) {
  Json j;
  j["ambient_order"] = cat.entries.back().group.order();
  Json groups = Json::array();
  for (const CatalogEntry& e : cat.entries) {
    Json g;
    g["label"] = e.label;
    g["order"] = e.group.order();
    g["index_over_chiral"] = e.index_over_icosa;
    g["generators"] = e.gen_cycles;
    groups.push_back(g);
  }
  j["groups"] = groups;
  auto edges = [&](const std::vector<std::pair<int, int>>& src) {
    Json out = Json::array();
    for (auto [a, b] : src)
      out.push_back({cat.entries[a].label, cat.entries[b].label});
    return out;
  };
  j["inclusions"] = edges(cat.inclusions);
  j["hasse"] = edges(cat.hasse);
  return j;
}

inline Json array_json(const PointArray& pa, int digits = 12) {
  Json j;
  j["seed"] = pa.seed;
  j["group"] = pa.group_label;
  j["total_points"] = pa.total_points;
  j["layer_count"] = pa.layers.size();
  Json layers = Json::array();
  for (size_t li = 0; li < pa.layers.size(); ++li) {
    const Layer& l = pa.layers[li];
    Json lj;
    lj["level"] = li + 1;  // 1 = innermost
    lj["radius2_exact"] = exact_str(l.rad2);
    lj["radius"] = pa.radius_of(l);
    lj["radius_decimal"] =
        to_decimal_string(to_qtau(l.rad2) / QTau{4, 2}, digits);
    lj["point_count"] = l.points.size();
    lj["cosets"] = l.coset_indices;
    Json pts = Json::array(), pts_exact = Json::array();
    const double unit = 1.0 / std::sqrt(to_double(ZTau{4, 2}));
    for (const ZTau3& p : l.points) {
      pts.push_back({to_double(p[0]) * unit, to_double(p[1]) * unit,
                     to_double(p[2]) * unit});
      pts_exact.push_back(
          {exact_str(p[0]), exact_str(p[1]), exact_str(p[2])});
    }
    lj["points"] = pts;
    lj["points_exact"] = pts_exact;
    layers.push_back(lj);
  }
  j["layers"] = layers;
  return j;
}

inline std::string array_csv(const PointArray& pa) {
  std::string out = "x,y,z,layer,radius,coset\n";
  const double unit = 1.0 / std::sqrt(to_double(ZTau{4, 2}));
  for (size_t li = 0; li < pa.layers.size(); ++li) {
    const Layer& l = pa.layers[li];
    double r = pa.radius_of(l);
    std::string cosets;
    for (size_t c : l.coset_indices) {
      if (!cosets.empty()) cosets += '|';
      cosets += std::to_string(c);
    }
    for (const ZTau3& p : l.points) {
      out += detail::fmt("%.9f", to_double(p[0]) * unit) + "," +
             detail::fmt("%.9f", to_double(p[1]) * unit) + "," +
             detail::fmt("%.9f", to_double(p[2]) * unit) + "," +
             std::to_string(li + 1) + "," + detail::fmt("%.9f", r) + "," +
             cosets + "\n";
    }
  }
  return out;
}

// OFF mesh of the convex hull of one layer; a degenerate layer (under four
// affinely independent points) exports as a bare point cloud.
inline std::string layer_off(const PointArray& pa, size_t level /*1-based*/) {
  const Layer& l = pa.layer_from_origin(level);
  std::vector<Point3> pts;
  const double unit = 1.0 / std::sqrt(to_double(ZTau{4, 2}));
  for (const ZTau3& p : l.points)
    pts.push_back({to_double(p[0]) * unit, to_double(p[1]) * unit,
                   to_double(p[2]) * unit});
  std::vector<std::array<int, 3>> faces = convex_hull_faces(pts);
  std::string out = "OFF\n" + std::to_string(pts.size()) + " " +
                    std::to_string(faces.size()) + " 0\n";
  for (const Point3& p : pts)
    out += detail::fmt("%.9f", p[0]) + " " + detail::fmt("%.9f", p[1]) + " " +
           detail::fmt("%.9f", p[2]) + "\n";
  for (const auto& f : faces)
    out += "3 " + std::to_string(f[0]) + " " + std::to_string(f[1]) + " " +
           std::to_string(f[2]) + "\n";
  return out;
}

inline Json planar_json(const PlanarOrbit& po, const std::string& subgroup,
                        int digits = 12) {
  Json j;
  j["n"] = po.n;
  j["subgroup"] = subgroup;
  j["exact_radii"] = po.exact;
  j["total_points"] = po.total_points;
  Json layers = Json::array();
  for (size_t li = 0; li < po.layers.size(); ++li) {
    const PlanarLayer& l = po.layers[li];
    Json lj;
    lj["level"] = li + 1;
    lj["radius"] = std::sqrt(l.rad2);
    if (po.exact) {
      lj["radius2_exact"] = to_exact_string(l.rad2_exact);
      lj["radius2_decimal"] = to_decimal_string(l.rad2_exact, digits);
    }
    lj["point_count"] = l.points.size();
    Json pts = Json::array();
    for (const auto& [re, im] : l.points) pts.push_back({re, im});
    lj["points"] = pts;
    lj["coefficients"] = l.members;
    layers.push_back(lj);
  }
  j["layers"] = layers;
  return j;
}

inline std::string planar_csv(const PlanarOrbit& po) {
  std::string out = "re,im,layer,radius\n";
  for (size_t li = 0; li < po.layers.size(); ++li) {
    const PlanarLayer& l = po.layers[li];
    double r = std::sqrt(l.rad2);
    for (const auto& [re, im] : l.points)
      out += detail::fmt("%.9f", re) + "," + detail::fmt("%.9f", im) + "," +
             std::to_string(li + 1) + "," + detail::fmt("%.9f", r) + "\n";
  }
  return out;
}

inline Json a4_json(const A4Orbit& ao, const std::string& subgroup) {
  Json j;
  j["n"] = 5;
  j["subgroup"] = subgroup;
  j["exact_radii"] = true;
  j["seed"] = ao.seed;
  j["total_points"] = ao.total_points;
  Json layers = Json::array();
  // Stored rad2 omits the projection prefactor; physical r^2 = rad2/(2(3-tau)).
  const QTau unit = inverse(QTau{6, -2});
  for (size_t li = 0; li < ao.layers.size(); ++li) {
    const A4Layer& l = ao.layers[li];
    Json lj;
    lj["level"] = li + 1;
    lj["radius2_exact"] = to_exact_string(to_qtau(l.rad2) * unit);
    lj["radius"] = std::sqrt(to_double(to_qtau(l.rad2) * unit));
    lj["point_count"] = l.points.size();
    Json pts = Json::array();
    for (const auto& [re, im] : l.points) pts.push_back({re, im});
    lj["points"] = pts;
    Json coords = Json::array();
    for (const Vec4& v : l.points4) coords.push_back(v);
    lj["lattice_coordinates"] = coords;
    layers.push_back(lj);
  }
  j["layers"] = layers;
  return j;
}

inline std::string a4_csv(const A4Orbit& ao) {
  std::string out = "re,im,layer,radius\n";
  const double unit = 2.0 * (3.0 - (1.0 + std::sqrt(5.0)) / 2.0);
  for (size_t li = 0; li < ao.layers.size(); ++li) {
    const A4Layer& l = ao.layers[li];
    double r = std::sqrt(to_double(l.rad2) / unit);
    for (const auto& [re, im] : l.points)
      out += detail::fmt("%.9f", re) + "," + detail::fmt("%.9f", im) + "," +
             std::to_string(li + 1) + "," + detail::fmt("%.9f", r) + "\n";
  }
  return out;
}

inline Json library_json(const Library& lib) {
  Json j;
  j["cutoff"] = lib.cutoff;
  j["fundamental_seed_count"] = lib.rep_count;
  j["arrays_before_dedup"] = lib.arrays_before_dedup;
  j["distinct_arrays"] = lib.entries.size();
  Json entries = Json::array();
  for (const LibraryEntry& e : lib.entries) {
    Json ej;
    ej["group"] = e.array.group_label;
    ej["seed"] = e.array.seed;
    ej["total_points"] = e.array.total_points;
    ej["layer_count"] = e.array.layers.size();
    Json radii = Json::array();
    for (const Layer& l : e.array.layers) radii.push_back(exact_str(l.rad2));
    ej["radius2_levels"] = radii;
    Json aliases = Json::array();
    for (const auto& [seed, label] : e.aliases) {
      Json a;
      a["group"] = label;
      a["seed"] = seed;
      aliases.push_back(a);
    }
    ej["aliases"] = aliases;
    entries.push_back(ej);
  }
  j["entries"] = entries;
  return j;
}

inline Json fit_json(const std::vector<FitResult>& results,
                     const CapsidModel& model) {
  Json j;
  j["cluster_count"] = model.clusters.size();
  j["model_max_radius"] = model.max_radius;
  Json rows = Json::array();
  for (const FitResult& fr : results) {
    Json r;
    r["group"] = fr.group_label;
    r["seed"] = fr.seed;
    r["selected"] = fr.selected;
    r["outer_match"] = fr.outer_match;
    r["scale"] = fr.scale;
    r["score"] = fr.score;
    Json ls = Json::array();
    for (const LayerFit& lf : fr.layer_stats) {
      Json l;
      l["radius_angstrom"] = lf.radius;
      l["points"] = lf.points;
      l["mean_calpha_dist"] = lf.mean_calpha_dist;
      l["min_calpha_dist"] = lf.min_calpha_dist;
      if (lf.mean_genome_dist >= 0)
        l["mean_genome_dist"] = lf.mean_genome_dist;
      ls.push_back(l);
    }
    r["layers"] = ls;
    rows.push_back(r);
  }
  j["results"] = rows;
  return j;
}

inline std::string fit_csv(const std::vector<FitResult>& results) {
  std::string out = "group,seed,selected,outer_match,scale,score\n";
  for (const FitResult& fr : results) {
    std::string seed;
    for (size_t i = 0; i < fr.seed.size(); ++i) {
      if (i) seed += ' ';
      seed += std::to_string(fr.seed[i]);
    }
    out += fr.group_label + ",\"" + seed + "\"," +
           (fr.selected ? "1" : "0") + "," +
           detail::fmt("%.6f", fr.outer_match) + "," +
           detail::fmt("%.6f", fr.scale) + "," +
           detail::fmt("%.6f", fr.score) + "\n";
  }
  return out;
}

// Scaled array as HETATM pseudo-atoms for molecular-graphics overlay.
// The 1.90 temperature-factor column carries the display sphere radius;
// it is visualization metadata, not part of the model.
inline std::string array_pdb(const PointArray& pa, double scale) {
  std::string out;
  int serial = 0;
  const double unit = scale / std::sqrt(to_double(ZTau{4, 2}));
  for (size_t li = 0; li < pa.layers.size(); ++li) {
    char chain = static_cast<char>('A' + li % 26);
    for (const ZTau3& p : pa.layers[li].points) {
      char buf[96];
      std::snprintf(buf, sizeof(buf),
                    "HETATM%5d  X   SPH %c%4d    %8.3f%8.3f%8.3f%6.2f%6.2f"
                    "           C\n",
                    ++serial, chain, static_cast<int>(li + 1),
                    to_double(p[0]) * unit, to_double(p[1]) * unit,
                    to_double(p[2]) * unit, 1.00, 1.90);
      out += buf;
    }
  }
  out += "END\n";
  return out;
}

}  // namespace orbshell

#endif
