#include <catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "orbshell/export.hpp"

using namespace orbshell;

namespace {

const IcosaEmbedding& emb() {
  static IcosaEmbedding e = build_embedding();
  return e;
}

PointArray twelve() {
  return build_point_array(emb().icosa, Vec6{1, 0, 0, 0, 0, 0}, emb(), "G1");
}

size_t count_lines(const std::string& s) {
  size_t n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

// closed orientable triangulation: every undirected edge borders two faces,
// once in each direction
void require_watertight(const std::vector<std::array<int, 3>>& faces) {
  std::map<std::pair<int, int>, int> directed;
  for (const auto& f : faces)
    for (int t = 0; t < 3; ++t)
      ++directed[{f[t], f[(t + 1) % 3]}];
  for (const auto& [e, cnt] : directed) {
    REQUIRE(cnt == 1);
    REQUIRE(directed.count({e.second, e.first}) == 1);
  }
}

}  // namespace

TEST_CASE("hull of a tetrahedron") {
  std::vector<std::array<double, 3>> pts = {
      {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  auto faces = convex_hull_faces(pts);
  REQUIRE(faces.size() == 4);
  require_watertight(faces);
}

TEST_CASE("hull of a cube with an interior point") {
  std::vector<std::array<double, 3>> pts;
  for (int x : {-1, 1})
    for (int y : {-1, 1})
      for (int z : {-1, 1}) pts.push_back({double(x), double(y), double(z)});
  pts.push_back({0.0, 0.0, 0.0});  // interior, must not appear in any face

  auto faces = convex_hull_faces(pts);
  REQUIRE(faces.size() == 12);  // six quads, triangulated
  require_watertight(faces);
  std::set<int> used;
  for (const auto& f : faces)
    for (int v : f) used.insert(v);
  REQUIRE(used == std::set<int>{0, 1, 2, 3, 4, 5, 6, 7});
  // outward orientation: every face normal points away from the center
  for (const auto& f : faces) {
    auto a = pts[f[0]], b = pts[f[1]], c = pts[f[2]];
    double nx = (b[1] - a[1]) * (c[2] - a[2]) - (b[2] - a[2]) * (c[1] - a[1]);
    double ny = (b[2] - a[2]) * (c[0] - a[0]) - (b[0] - a[0]) * (c[2] - a[2]);
    double nz = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    REQUIRE(nx * a[0] + ny * a[1] + nz * a[2] > 0);
  }
}

TEST_CASE("hull of an octahedron") {
  std::vector<std::array<double, 3>> pts;
  for (int axis = 0; axis < 3; ++axis)
    for (int sgn : {-1, 1}) {
      std::array<double, 3> p{};
      p[axis] = sgn;
      pts.push_back(p);
    }
  auto faces = convex_hull_faces(pts);
  REQUIRE(faces.size() == 8);
  require_watertight(faces);
}

TEST_CASE("hull degeneracies yield no faces") {
  REQUIRE(convex_hull_faces({}).empty());
  REQUIRE(convex_hull_faces({{1, 2, 3}}).empty());
  REQUIRE(convex_hull_faces({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}).empty());
  std::vector<std::array<double, 3>> same(8, {2.0, -1.0, 0.5});
  REQUIRE(convex_hull_faces(same).empty());
}

TEST_CASE("layer mesh of the twelve-point shell is an icosahedron") {
  PointArray pa = twelve();
  std::string off = layer_off(pa, 1);
  REQUIRE(off.rfind("OFF\n12 20 0\n", 0) == 0);
  REQUIRE(count_lines(off) == 2 + 12 + 20);
  // every face line is a triangle with indices below 12
  size_t pos = off.find("\n3 ");
  REQUIRE(pos != std::string::npos);
}

TEST_CASE("array serialization is exact and stable") {
  PointArray pa = twelve();
  Json j = array_json(pa);
  REQUIRE(j["seed"] == Json::array({1, 0, 0, 0, 0, 0}));
  REQUIRE(j["group"] == "G1");
  REQUIRE(j["total_points"] == 12);
  REQUIRE(j["layer_count"] == 1);
  const Json& l = j["layers"][0];
  REQUIRE(l["level"] == 1);
  REQUIRE(l["radius2_exact"] == "2 + tau");
  REQUIRE(l["radius_decimal"] == "0.500000000000");  // squared, rescaled
  REQUIRE(l["point_count"] == 12);
  REQUIRE(double(l["radius"]) ==
          Catch::Approx(std::sqrt(0.5)).epsilon(1e-12));
  REQUIRE(l["points"].size() == 12);
  REQUIRE(l["points_exact"].size() == 12);
  REQUIRE(l["points_exact"][0].size() == 3);

  // byte stability across rebuilds
  std::string once = array_json(pa).dump(2);
  std::string again = array_json(twelve()).dump(2);
  REQUIRE(once == again);
}

TEST_CASE("array table rendering") {
  PointArray pa = twelve();
  std::string csv = array_csv(pa);
  REQUIRE(csv.rfind("x,y,z,layer,radius,coset\n", 0) == 0);
  REQUIRE(count_lines(csv) == 1 + 12);
  REQUIRE(csv.find(",1,0.707106781,") != std::string::npos);
}

TEST_CASE("pseudo-atom rendering has fixed columns") {
  PointArray pa = twelve();
  std::string pdb = array_pdb(pa, 100.0);
  REQUIRE(count_lines(pdb) == 12 + 1);
  REQUIRE(pdb.rfind("END\n") == pdb.size() - 4);
  std::string first = pdb.substr(0, pdb.find('\n'));
  REQUIRE(first.size() == 78);
  REQUIRE(first.rfind("HETATM    1  X   SPH A   1    ", 0) == 0);
  REQUIRE(first.substr(54, 6) == "  1.00");
  REQUIRE(first.substr(60, 6) == "  1.90");
  REQUIRE(first.back() == 'C');
}

TEST_CASE("planar serialization") {
  CycInt z(5, {1, 2, 4, 3, 0});
  HolGroup hol = hol_group(5);
  PlanarOrbit po = lift_and_orbit(5, hol.elements, z);
  Json j = planar_json(po, "holomorph");
  REQUIRE(j["n"] == 5);
  REQUIRE(j["subgroup"] == "holomorph");
  REQUIRE(j["exact_radii"] == true);
  REQUIRE(j["total_points"] == 20);
  REQUIRE(j["layers"].size() == 2);
  REQUIRE(j["layers"][0]["radius2_exact"] == "17 - 9*tau");
  REQUIRE(j["layers"][1]["radius2_exact"] == "8 + 9*tau");
  REQUIRE(j["layers"][0]["points"].size() == 10);

  std::string csv = planar_csv(po);
  REQUIRE(csv.rfind("re,im,layer,radius\n", 0) == 0);
  REQUIRE(count_lines(csv) == 1 + 20);
}

TEST_CASE("root-coordinate panel serialization") {
  A4Chain chain = a4_case();
  A4Orbit oh = a4_orbit(chain.h, Vec4{1, 2, 4, 3});
  Json j = a4_json(oh, "dihedral");
  REQUIRE(j["subgroup"] == "dihedral");
  REQUIRE(j["total_points"] == 10);
  REQUIRE(j["layers"].size() == 1);
  // stored 28 + 4 tau divided by the projection factor 2(3 - tau)
  REQUIRE(j["layers"][0]["radius2_exact"] == "6 + 4*tau");
  double r = double(j["layers"][0]["radius"]);
  double tau = (1.0 + std::sqrt(5.0)) / 2.0;
  REQUIRE(r == Catch::Approx(std::sqrt(6.0 + 4.0 * tau)).epsilon(1e-12));
  REQUIRE(j["layers"][0]["lattice_coordinates"].size() == 10);

  // the rendered points satisfy the exact radius
  for (const Json& pt : j["layers"][0]["points"]) {
    double x = pt[0], y = pt[1];
    REQUIRE(x * x + y * y == Catch::Approx(r * r).margin(1e-9));
  }
  std::string csv = a4_csv(oh);
  REQUIRE(count_lines(csv) == 1 + 10);
  REQUIRE(csv.find("," + detail::fmt("%.9f", r) + "\n") != std::string::npos);
}

TEST_CASE("catalog serialization") {
  static Catalog cat = build_catalog(true);
  Json j = catalog_json(cat);
  REQUIRE(j["ambient_order"] == 46080);
  REQUIRE(j["groups"].size() == 13);
  REQUIRE(j["groups"][0]["label"] == "G1");
  REQUIRE(j["groups"][0]["order"] == 60);
  REQUIRE(j["groups"][12]["order"] == 46080);
  REQUIRE(j["inclusions"].size() == cat.inclusions.size());
  REQUIRE(j["hasse"].size() == cat.hasse.size());
  for (const Json& e : j["hasse"]) REQUIRE(e.size() == 2);
}

TEST_CASE("library and fit serialization") {
  static Catalog cat = build_catalog(true);
  static Library lib = build_library(cat, emb(), 1);
  Json j = library_json(lib);
  REQUIRE(j["cutoff"] == 1);
  REQUIRE(j["fundamental_seed_count"] == 9);
  REQUIRE(j["arrays_before_dedup"] == 90);
  REQUIRE(j["distinct_arrays"] == 11);
  size_t alias_total = 0;
  for (const Json& e : j["entries"]) {
    REQUIRE(e["radius2_levels"].size() == e["layer_count"]);
    for (const Json& a : e["aliases"]) {
      REQUIRE(a.contains("group"));
      REQUIRE(a["seed"].size() == 6);
    }
    alias_total += e["aliases"].size();
  }
  REQUIRE(alias_total == 90);

  // fit rows round-trip the essentials
  PointArray pa = twelve();
  CapsidModel model;
  const double unit = 120.0 / pa.radius_of(pa.layers[0]) /
                      std::sqrt(to_double(ZTau{4, 2}));
  for (const ZTau3& pz : pa.layers[0].points) {
    Point3 p{to_double(pz[0]) * unit, to_double(pz[1]) * unit,
             to_double(pz[2]) * unit};
    model.clusters.push_back({p, 1});
    model.calpha.push_back(p);
  }
  model.max_radius = 120.0;
  std::vector<FitResult> res = {fit_array(pa, model)};
  Json fj = fit_json(res, model);
  REQUIRE(fj["cluster_count"] == 12);
  REQUIRE(fj["results"][0]["selected"] == true);
  REQUIRE(fj["results"][0]["outer_match"] == 1.0);
  std::string csv = fit_csv(res);
  REQUIRE(csv.rfind("group,seed,selected,outer_match,scale,score\n", 0) == 0);
  REQUIRE(csv.find("G1,\"1 0 0 0 0 0\",1,") != std::string::npos);
}
