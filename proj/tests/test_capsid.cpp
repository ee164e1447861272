#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "orbshell/capsid.hpp"
#include "orbshell/icosa.hpp"
#include "orbshell/shells.hpp"

using namespace orbshell;

namespace {

std::string atom_line(int serial, const std::string& name, char altloc,
                      const std::string& resname, char chain, int resseq,
                      double x, double y, double z) {
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "ATOM  %5d %-4s%c%-3s %c%4d    %8.3f%8.3f%8.3f  1.00  0.00\n",
                serial, name.c_str(), altloc, resname.c_str(), chain, resseq,
                x, y, z);
  return buf;
}

std::string write_fixture(const std::string& stem, const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / (stem + ".pdb");
  std::ofstream out(path);
  out << body;
  return path.string();
}

const IcosaEmbedding& emb() {
  static IcosaEmbedding e = build_embedding();
  return e;
}

}  // namespace

TEST_CASE("fixed-column record ingestion") {
  std::string body;
  body += "HEADER    SYNTHETIC FIXTURE\n";
  body += "ATOMIC COORDINATES FOLLOW\n";  // not an ATOM record
  body += atom_line(1, "N", ' ', "ALA", 'A', 1, 1.0, 2.0, 3.0);
  body += atom_line(2, "CA", ' ', "ALA", 'A', 1, 4.5, -2.25, 0.0);
  body += atom_line(3, "CA", 'A', "GLY", 'A', 2, 0.0, 0.0, 7.0);
  body += atom_line(4, "CA", 'B', "GLY", 'A', 2, 0.0, 0.0, 7.5);
  body += atom_line(5, "P", ' ', "A", 'B', 3, 1.0, 1.0, 1.0);
  body += atom_line(6, "C1'", ' ', "U", 'B', 4, -1.0, 0.0, 0.0);
  body += "HETATM    7  MG  MG  C   1      10.000  10.000  10.000\n";
  body += "END\n";
  std::string path = write_fixture("orbshell_ingest", body);

  CapsidModel m = ingest_pdb(path, false);
  REQUIRE(m.atoms.size() == 6);
  REQUIRE(m.calpha.size() == 2);  // altloc B dropped
  REQUIRE(m.calpha[0][0] == Catch::Approx(4.5));
  REQUIRE(m.calpha[0][1] == Catch::Approx(-2.25));
  REQUIRE(m.calpha[1][2] == Catch::Approx(7.0));
  REQUIRE(m.genome.size() == 2);  // nucleotide residues A and U
  REQUIRE(m.max_radius == Catch::Approx(7.0));  // over alpha carbons only
  REQUIRE(m.atoms[0].name == "N");
  REQUIRE(m.atoms[1].resname == "ALA");
  REQUIRE(m.atoms[1].chain == 'A');
}

TEST_CASE("ingestion failures are typed") {
  SECTION("missing file") {
    REQUIRE_THROWS_AS(ingest_pdb("/nonexistent/nowhere.pdb", false),
                      ParseError);
  }
  SECTION("truncated record") {
    std::string path = write_fixture(
        "orbshell_trunc", "ATOM      1  CA  ALA A   1      11.104\n");
    REQUIRE_THROWS_AS(ingest_pdb(path, false), ParseError);
  }
  SECTION("bad coordinate field") {
    std::string good = atom_line(1, "CA", ' ', "ALA", 'A', 1, 1.0, 2.0, 3.0);
    std::string bad = good;
    bad.replace(30, 8, "  12.3.4");
    std::string path = write_fixture("orbshell_badnum", bad);
    REQUIRE_THROWS_AS(ingest_pdb(path, false), ParseError);
  }
  SECTION("no atom records") {
    std::string path =
        write_fixture("orbshell_noatoms", "HEADER    EMPTY\nEND\n");
    REQUIRE_THROWS_AS(ingest_pdb(path, false), EmptyModel);
  }
  SECTION("no alpha carbons") {
    std::string path = write_fixture(
        "orbshell_noca", atom_line(1, "N", ' ', "ALA", 'A', 1, 1.0, 2.0, 3.0));
    REQUIRE_THROWS_AS(ingest_pdb(path, false), EmptyModel);
  }
}

TEST_CASE("symmetry expansion replicates the unit sixty-fold") {
  std::string path = write_fixture(
      "orbshell_expand",
      atom_line(1, "CA", ' ', "ALA", 'A', 1, 10.0, 4.0, -3.0) +
          atom_line(2, "P", ' ', "G", 'B', 2, 5.0, 0.0, 0.0));
  std::vector<RotMat> rots = rotation_matrices(emb());
  REQUIRE(rots.size() == 60);

  CapsidModel m = ingest_pdb(path, true, rots);
  REQUIRE(m.calpha.size() == 60);
  REQUIRE(m.genome.size() == 60);
  double r = std::sqrt(10.0 * 10.0 + 16.0 + 9.0);
  REQUIRE(m.max_radius == Catch::Approx(r));  // rotations preserve radius
  for (const Point3& p : m.calpha)
    REQUIRE(norm3(p) == Catch::Approx(r).margin(1e-9));

  CapsidModel unit = ingest_pdb(path, false);
  REQUIRE(unit.calpha.size() == 1);
  REQUIRE_THROWS_AS(ingest_pdb(path, true, {}), std::logic_error);
}

TEST_CASE("grid nearest-neighbor queries match brute force") {
  std::mt19937_64 rng(991);
  std::uniform_real_distribution<double> coord(-50.0, 50.0);
  std::vector<Point3> pts(200);
  for (Point3& p : pts) p = {coord(rng), coord(rng), coord(rng)};
  detail::PointGrid grid;
  grid.build(pts, 8.0);

  auto brute = [&](const Point3& q) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point3& p : pts) best = std::min(best, dist2(q, p));
    return std::sqrt(best);
  };
  for (int t = 0; t < 50; ++t) {
    Point3 q{coord(rng), coord(rng), coord(rng)};
    REQUIRE(grid.nearest(q) == Catch::Approx(brute(q)).margin(1e-9));
  }
  // far queries exercise the ring expansion
  Point3 far{500.0, -300.0, 200.0};
  REQUIRE(grid.nearest(far) == Catch::Approx(brute(far)).margin(1e-9));
}

TEST_CASE("surface extraction finds the distal blobs") {
  // 12 blobs of five atoms each at the five-fold directions, plus interior
  // atoms at half the radius that must not reach the surface shell.
  CapsidModel model;
  const double R = 100.0;
  std::vector<Point3> centers;
  for (const AxisEnd& e : axis_ends(emb())) {
    if (e.fold != 5) continue;
    centers.push_back({e.unit[0] * R, e.unit[1] * R, e.unit[2] * R});
  }
  REQUIRE(centers.size() == 12);
  for (const Point3& c : centers) {
    // symmetric offsets, so each blob centroid is its center exactly
    model.calpha.push_back(c);
    model.calpha.push_back({c[0] + 2.0, c[1], c[2]});
    model.calpha.push_back({c[0] - 2.0, c[1], c[2]});
    model.calpha.push_back({c[0], c[1] + 2.0, c[2]});
    model.calpha.push_back({c[0], c[1] - 2.0, c[2]});
    model.calpha.push_back({c[0] * 0.5, c[1] * 0.5, c[2] * 0.5});  // interior
  }
  for (const Point3& p : model.calpha)
    model.max_radius = std::max(model.max_radius, norm3(p));

  std::vector<Cluster> cl = surface_clusters(model, 0.95, 8.0);
  REQUIRE(cl.size() == 12);
  REQUIRE(model.clusters.size() == 12);
  for (const Cluster& c : cl) REQUIRE(c.members == 5);
  // centroids recover the blob centers
  std::sort(centers.begin(), centers.end());
  for (size_t i = 0; i < 12; ++i)
    for (int t = 0; t < 3; ++t)
      REQUIRE(cl[i].centroid[t] == Catch::Approx(centers[i][t]).margin(1e-6));

  REQUIRE_THROWS_AS(surface_clusters(model, 1.5, 8.0), NoSurface);
}

TEST_CASE("a matching array is selected with unit outer match") {
  // Synthetic capsid generated from a known array: clusters sit exactly on
  // the scaled outer layer, alpha carbons on every scaled layer.
  static Catalog cat = build_catalog(true);
  PointArray pa = build_point_array(cat.entries[3].group,
                                    Vec6{0, 0, 1, 1, 2, 1}, emb(), "G4");
  REQUIRE(pa.layers.size() == 4);

  const double target = 150.0;
  double alpha = target / pa.radius_of(pa.layers.back());
  double unit = alpha / std::sqrt(to_double(ZTau{4, 2}));

  CapsidModel model;
  for (const Layer& l : pa.layers)
    for (const ZTau3& pz : l.points) {
      Point3 p{to_double(pz[0]) * unit, to_double(pz[1]) * unit,
               to_double(pz[2]) * unit};
      model.calpha.push_back(p);
      if (&l == &pa.layers.back()) model.clusters.push_back({p, 1});
    }
  model.max_radius = target;

  FitResult fr = fit_array(pa, model);
  REQUIRE(fr.scale == Catch::Approx(alpha).epsilon(1e-9));
  REQUIRE(fr.outer_match == 1.0);
  REQUIRE(fr.selected);
  REQUIRE(fr.score == Catch::Approx(0.0).margin(1e-6));
  REQUIRE(fr.layer_stats.size() == 4);
  REQUIRE(fr.layer_stats[0].points == 60);
  REQUIRE(fr.layer_stats[3].points == 120);
  for (const LayerFit& lf : fr.layer_stats) {
    REQUIRE(lf.mean_calpha_dist == Catch::Approx(0.0).margin(1e-6));
    REQUIRE(lf.mean_genome_dist == -1.0);  // no genome atoms supplied
  }
  REQUIRE(fr.layer_stats.back().radius == Catch::Approx(target).epsilon(1e-9));
}

TEST_CASE("a mismatched array is rejected") {
  // Octahedral clusters: every five-fold array point stays far from them.
  PointArray pa = build_point_array(emb().icosa, Vec6{1, 0, 0, 0, 0, 0},
                                    emb(), "G1");
  REQUIRE(pa.layers.size() == 1);
  REQUIRE(pa.total_points == 12);

  CapsidModel model;
  const double R = 150.0;
  for (int axis = 0; axis < 3; ++axis)
    for (int sgn : {-1, 1}) {
      Point3 p{};
      p[axis] = R * sgn;
      model.clusters.push_back({p, 1});
      model.calpha.push_back(p);
    }
  model.max_radius = R;

  FitResult fr = fit_array(pa, model);
  REQUIRE(fr.outer_match == 0.0);
  REQUIRE(!fr.selected);
  REQUIRE(fr.score > 10.0);  // single layer scores on the outer shell
}

TEST_CASE("library ranking puts selected arrays first") {
  static Catalog cat = build_catalog(true);
  static Library lib = build_library(cat, emb(), 1);

  // model generated from the twelve-point array
  PointArray twelve = build_point_array(emb().icosa, Vec6{1, 0, 0, 0, 0, 0},
                                        emb(), "G1");
  const double target = 120.0;
  double unit = target / twelve.radius_of(twelve.layers[0]) /
                std::sqrt(to_double(ZTau{4, 2}));
  CapsidModel model;
  for (const ZTau3& pz : twelve.layers[0].points) {
    Point3 p{to_double(pz[0]) * unit, to_double(pz[1]) * unit,
             to_double(pz[2]) * unit};
    model.clusters.push_back({p, 1});
    model.calpha.push_back(p);
  }
  model.max_radius = target;

  std::vector<FitResult> ranked = rank_library(lib, model);
  REQUIRE(ranked.size() == lib.entries.size() - 1);  // origin entry skipped

  bool seen_unselected = false;
  for (size_t i = 0; i < ranked.size(); ++i) {
    if (!ranked[i].selected) seen_unselected = true;
    REQUIRE(!(seen_unselected && ranked[i].selected));  // selected first
    if (i > 0 && ranked[i - 1].selected && ranked[i].selected)
      REQUIRE(ranked[i - 1].score <= ranked[i].score);
    if (i > 0 && !ranked[i - 1].selected && !ranked[i].selected)
      REQUIRE(ranked[i - 1].outer_match >= ranked[i].outer_match);
  }
  // the generating geometry is recovered by some selected entry
  bool found = false;
  for (const FitResult& fr : ranked)
    if (fr.selected && fr.layer_stats.size() == 1 &&
        fr.layer_stats[0].points == 12 &&
        fr.score < 1e-6)
      found = true;
  REQUIRE(found);
}
