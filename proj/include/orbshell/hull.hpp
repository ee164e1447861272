#ifndef ORBSHELL_HULL_HPP_
#define ORBSHELL_HULL_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "orbshell/base.hpp"

namespace orbshell {

// Triangulated convex hull of a 3D point cloud, used for mesh export.
// Input points are deterministically joggled before construction so that
// coplanar rings (common in highly symmetric layers) triangulate cleanly;
// face indices refer to the original input order. Degenerate input (fewer
// than 4 affinely independent points) yields an empty face list.
inline std::vector<std::array<int, 3>> convex_hull_faces(
    const std::vector<std::array<double, 3>>& input) {
  using P3 = std::array<double, 3>;
  const size_t n = input.size();
  if (n < 4) return {};

  double scale = 0;
  for (const P3& p : input)
    for (double c : p) scale = std::max(scale, std::fabs(c));
  if (scale == 0) return {};

  // Joggle: tiny index-seeded perturbation, same on every run.
  std::vector<P3> pts(n);
  uint64_t s = 0x9e3779b97f4a7c15ull;
  for (size_t i = 0; i < n; ++i) {
    for (int t = 0; t < 3; ++t) {
      s = s * 6364136223846793005ull + 1442695040888963407ull;
      double u = static_cast<double>(s >> 11) / 9007199254740992.0;  // [0,1)
      pts[i][t] = input[i][t] + (u - 0.5) * 2e-7 * scale;
    }
  }

  auto sub = [](const P3& a, const P3& b) {
    return P3{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
  };
  auto cross = [](const P3& a, const P3& b) {
    return P3{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
              a[0] * b[1] - a[1] * b[0]};
  };
  auto dot = [](const P3& a, const P3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  };

  struct Face {
    std::array<int, 3> v;
    P3 normal;
    double offset;
    bool alive;
  };
  auto make_face = [&](int a, int b, int c) {
    Face f;
    f.v = {a, b, c};
    f.normal = cross(sub(pts[b], pts[a]), sub(pts[c], pts[a]));
    f.offset = dot(f.normal, pts[a]);
    f.alive = true;
    return f;
  };
  const double eps = 1e-12 * scale * scale * scale;

  // Initial tetrahedron: spread-out quadruple with nonzero volume.
  size_t i0 = 0;
  for (size_t i = 1; i < n; ++i)
    if (pts[i] < pts[i0]) i0 = i;
  size_t i1 = i0;
  double best = -1;
  auto d2 = [&](size_t a, size_t b) {
    P3 d = sub(pts[a], pts[b]);
    return dot(d, d);
  };
  for (size_t i = 0; i < n; ++i)
    if (d2(i, i0) > best) best = d2(i, i0), i1 = i;
  if (i1 == i0) return {};
  size_t i2 = i0;
  best = -1;
  for (size_t i = 0; i < n; ++i) {
    P3 c = cross(sub(pts[i1], pts[i0]), sub(pts[i], pts[i0]));
    double a2 = dot(c, c);
    if (a2 > best) best = a2, i2 = i;
  }
  if (best <= 0) return {};
  size_t i3 = i0;
  best = 0;
  P3 nrm = cross(sub(pts[i1], pts[i0]), sub(pts[i2], pts[i0]));
  double off = dot(nrm, pts[i0]);
  for (size_t i = 0; i < n; ++i) {
    double v = std::fabs(dot(nrm, pts[i]) - off);
    if (v > best) best = v, i3 = i;
  }
  if (best <= eps) return {};

  std::vector<Face> faces;
  {
    int a = static_cast<int>(i0), b = static_cast<int>(i1),
        c = static_cast<int>(i2), d = static_cast<int>(i3);
    if (dot(nrm, pts[i3]) - off > 0) std::swap(b, c);  // outward orientation
    faces.push_back(make_face(a, b, c));
    faces.push_back(make_face(a, c, d));
    faces.push_back(make_face(a, d, b));
    faces.push_back(make_face(b, d, c));
  }

  for (size_t p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    std::vector<size_t> visible;
    for (size_t f = 0; f < faces.size(); ++f)
      if (faces[f].alive &&
          dot(faces[f].normal, pts[p]) - faces[f].offset > eps)
        visible.push_back(f);
    if (visible.empty()) continue;
    // Horizon: directed edges of visible faces whose reverse is not visible.
    std::unordered_set<uint64_t> edges;
    auto ekey = [](int a, int b) {
      return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) |
             static_cast<uint32_t>(b);
    };
    for (size_t f : visible)
      for (int t = 0; t < 3; ++t)
        edges.insert(ekey(faces[f].v[t], faces[f].v[(t + 1) % 3]));
    std::vector<std::array<int, 2>> horizon;
    for (size_t f : visible)
      for (int t = 0; t < 3; ++t) {
        int a = faces[f].v[t], b = faces[f].v[(t + 1) % 3];
        if (!edges.count(ekey(b, a))) horizon.push_back({a, b});
      }
    for (size_t f : visible) faces[f].alive = false;
    for (const auto& e : horizon)
      faces.push_back(make_face(e[0], e[1], static_cast<int>(p)));
  }

  std::vector<std::array<int, 3>> out;
  for (const Face& f : faces)
    if (f.alive) out.push_back(f.v);
  return out;
}

}  // namespace orbshell

#endif
