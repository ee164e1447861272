#ifndef ORBSHELL_DIHEDRAL_HPP_
#define ORBSHELL_DIHEDRAL_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "orbshell/base.hpp"
#include "orbshell/cyclotomic.hpp"
#include "orbshell/group.hpp"
#include "orbshell/qtau.hpp"

namespace orbshell {

// ---------------------------------------------------------------------------
// Affine maps j -> m j + l on Z_n with m invertible. Composition matches
// map composition: (m,l)(m',l') = (mm', ml'+l).

struct HolElement {
  int m = 1, l = 0;
  bool operator==(const HolElement& o) const { return m == o.m && l == o.l; }
  bool operator<(const HolElement& o) const {
    return m != o.m ? m < o.m : l < o.l;
  }
};

struct HolGroup {
  int n = 0;
  std::vector<HolElement> elements;  // sorted

  HolElement identity() const { return {1, 0}; }
  HolElement compose(HolElement a, HolElement b) const {
    return {int((int64_t(a.m) * b.m) % n), int((int64_t(a.m) * b.l + a.l) % n)};
  }
  HolElement inverse(HolElement a) const {
    int mi = 1;
    while ((int64_t(mi) * a.m) % n != 1) ++mi;
    return {mi, int(((-int64_t(mi) * a.l) % n + n) % n)};
  }
  bool contains(HolElement e) const {
    return std::binary_search(elements.begin(), elements.end(), e);
  }
  int element_order(HolElement a) const {
    HolElement x = a;
    int k = 1;
    while (!(x == identity())) {
      x = compose(a, x);
      ++k;
    }
    return k;
  }
};

inline HolGroup hol_group(int n) {
  check(n >= 3, "holomorph needs n >= 3");
  HolGroup g;
  g.n = n;
  for (int m = 1; m < n; ++m) {
    if (std::gcd(m, n) != 1) continue;
    for (int l = 0; l < n; ++l) g.elements.push_back({m, l});
  }
  return g;
}

// The lifted dihedral group inside the holomorph: rotations (1,l) and
// reflections (-1,l).
inline std::vector<HolElement> hol_dihedral(const HolGroup& g) {
  std::vector<HolElement> d;
  for (const HolElement& e : g.elements)
    if (e.m == 1 || e.m == g.n - 1) d.push_back(e);
  return d;
}

inline bool hol_dihedral_is_normal(const HolGroup& g) {
  std::vector<HolElement> d = hol_dihedral(g);
  for (const HolElement& s : g.elements) {
    HolElement si = g.inverse(s);
    for (const HolElement& x : d) {
      HolElement y = g.compose(g.compose(s, x), si);
      if (!(y.m == 1 || y.m == g.n - 1)) return false;
    }
  }
  return true;
}

inline bool hol_extension_is_proper(const HolGroup& g) {
  return g.elements.size() > 2 * static_cast<size_t>(g.n);
}

// ---------------------------------------------------------------------------
// Planar orbits of cyclotomic integers under a set of affine twists.

struct PlanarLayer {
  double rad2 = 0;
  QTau rad2_exact;  // meaningful only when the orbit is exact (n = 5)
  std::vector<std::vector<int64_t>> members;       // canonical coefficients
  std::vector<std::pair<double, double>> points;   // first complex coordinate
};

struct PlanarOrbit {
  int n = 0;
  bool exact = false;  // n = 5: radii and grouping are exact
  size_t total_points = 0;
  std::vector<PlanarLayer> layers;  // ascending radius
};

inline PlanarOrbit lift_and_orbit(int n, const std::vector<HolElement>& maps,
                                  const CycInt& z, double rel_tol = 1e-9) {
  check(z.n == n, "seed modulus mismatch");
  PlanarOrbit out;
  out.n = n;
  out.exact = (n == 5);

  std::map<std::vector<int64_t>, CycInt> orbit;  // canonical -> representative
  for (const HolElement& e : maps) {
    CycInt w = cyc_apply_t(e.m, e.l, z);
    orbit.emplace(cyc_canonical(w), w);
  }

  struct Bucket {
    QTau exact;
    double approx;
    PlanarLayer layer;
  };
  std::vector<Bucket> buckets;
  for (const auto& [canon, w] : orbit) {
    QTau ex;
    double ap = cyc_abs2(w);
    bool found = false;
    if (out.exact) {
      ex = cyc_abs2_exact5(w);
      for (Bucket& b : buckets)
        if (b.exact == ex) {
          b.layer.members.push_back(canon);
          b.layer.points.push_back(cyc_complex(w));
          found = true;
          break;
        }
    } else {
      for (Bucket& b : buckets)
        if (std::abs(b.approx - ap) <= rel_tol * std::max(1.0, b.approx)) {
          b.layer.members.push_back(canon);
          b.layer.points.push_back(cyc_complex(w));
          found = true;
          break;
        }
    }
    if (!found) {
      Bucket b;
      b.exact = ex;
      b.approx = ap;
      b.layer.rad2 = ap;
      b.layer.rad2_exact = ex;
      b.layer.members.push_back(canon);
      b.layer.points.push_back(cyc_complex(w));
      buckets.push_back(std::move(b));
    }
  }
  std::sort(buckets.begin(), buckets.end(),
            [](const Bucket& a, const Bucket& b) { return a.approx < b.approx; });
  for (Bucket& b : buckets) {
    out.total_points += b.layer.members.size();
    out.layers.push_back(std::move(b.layer));
  }
  return out;
}

// Theorem-level check of the n=5 chain D_10 < Hol(Z_5) on one seed: one
// radius per coset orbit, transversal independence, coincidence criterion,
// and equal layer cardinalities from normality.
struct PlanarChainReport {
  bool one_radius_per_coset = true;
  bool transversal_independent = true;
  bool criterion_matches = true;
  bool equal_cardinalities = true;
  size_t coset_count = 0;
};

inline PlanarChainReport verify_planar_chain(const CycInt& z,
                                             uint64_t rng_seed = 0x5eed) {
  check(z.n == 5, "the exact chain lives at n = 5");
  HolGroup hol = hol_group(5);
  std::vector<HolElement> dih = hol_dihedral(hol);
  std::vector<HolElement> dih_sorted = dih;
  std::sort(dih_sorted.begin(), dih_sorted.end());

  // Right transversal of the dihedral subgroup, first member of each coset.
  std::vector<HolElement> reps;
  std::vector<HolElement> covered;
  for (const HolElement& g : hol.elements) {
    if (std::binary_search(covered.begin(), covered.end(), g)) continue;
    reps.push_back(g);
    for (const HolElement& x : dih) covered.push_back(hol.compose(x, g));
    std::sort(covered.begin(), covered.end());
  }
  PlanarChainReport rep;
  rep.coset_count = reps.size();

  auto coset_orbit = [&](const std::vector<HolElement>& dd, HolElement g) {
    std::map<std::vector<int64_t>, CycInt> pts;
    for (const HolElement& x : dd) {
      HolElement e = hol.compose(x, g);
      CycInt w = cyc_apply_t(e.m, e.l, z);
      pts.emplace(cyc_canonical(w), w);
    }
    return pts;
  };

  std::vector<std::map<std::vector<int64_t>, CycInt>> orbits;
  std::vector<QTau> radius_of;
  for (const HolElement& g : reps) {
    auto pts = coset_orbit(dih, g);
    QTau r = cyc_abs2_exact5(pts.begin()->second);
    for (const auto& [c, w] : pts)
      if (!(cyc_abs2_exact5(w) == r)) rep.one_radius_per_coset = false;
    orbits.push_back(std::move(pts));
    radius_of.push_back(r);
  }

  uint64_t state = rng_seed;
  auto next = [&state] {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return state >> 33;
  };
  for (int t = 0; t < 3; ++t) {
    for (size_t i = 0; i < reps.size(); ++i) {
      HolElement alt =
          hol.compose(dih[next() % dih.size()], reps[i]);
      auto pts = coset_orbit(dih, alt);
      std::vector<std::vector<int64_t>> a, b;
      for (const auto& [c, w] : pts) a.push_back(c);
      for (const auto& [c, w] : orbits[i]) b.push_back(c);
      if (a != b) rep.transversal_independent = false;
    }
  }

  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = 0; j < reps.size(); ++j) {
      std::vector<std::vector<int64_t>> a, b;
      for (const auto& [c, w] : orbits[i]) a.push_back(c);
      for (const auto& [c, w] : orbits[j]) b.push_back(c);
      bool same = a == b;
      CycInt gz = cyc_apply_t(reps[j].m, reps[j].l, z);
      bool crit = orbits[i].count(cyc_canonical(gz)) > 0;
      if (same != crit) rep.criterion_matches = false;
    }

  check(hol_dihedral_is_normal(hol), "dihedral part is normal at n=5");
  for (size_t i = 1; i < orbits.size(); ++i)
    if (orbits[i].size() != orbits[0].size()) rep.equal_cardinalities = false;
  return rep;
}

// ---------------------------------------------------------------------------
// 4x4 integer matrices acting on root coordinates of the planar five-fold
// lattice.

struct Mat4 {
  std::array<std::array<int, 4>, 4> m{};

  static Mat4 identity() {
    Mat4 r;
    for (int i = 0; i < 4; ++i) r.m[i][i] = 1;
    return r;
  }
  bool operator==(const Mat4& o) const { return m == o.m; }
  bool operator!=(const Mat4& o) const { return !(*this == o); }
  bool operator<(const Mat4& o) const { return m < o.m; }
  uint64_t key() const {
    uint64_t h = 0xcbf29ce484222325ull;
    for (const auto& row : m)
      for (int x : row) {
        h ^= static_cast<uint64_t>(static_cast<uint8_t>(x + 8));
        h *= 0x100000001b3ull;
      }
    return h;
  }
};

inline Mat4 compose(const Mat4& a, const Mat4& b) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      int s = 0;
      for (int k = 0; k < 4; ++k) s += a.m[i][k] * b.m[k][j];
      r.m[i][j] = s;
    }
  return r;
}

inline int det4(const Mat4& a) {
  int d = 0;
  int idx[4] = {0, 1, 2, 3};
  // permutation expansion over 24 terms; matrices here are tiny integers
  std::sort(idx, idx + 4);
  do {
    int sgn = 1;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (idx[i] > idx[j]) sgn = -sgn;
    int term = sgn;
    for (int i = 0; i < 4; ++i) term *= a.m[i][idx[i]];
    d += term;
  } while (std::next_permutation(idx, idx + 4));
  return d;
}

inline Mat4 inverse(const Mat4& a) {
  int d = det4(a);
  check(d == 1 || d == -1, "lattice group matrices are unimodular");
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      // cofactor expansion: minor of (j,i) with sign
      int rows[3], cols[3], ri = 0, ci = 0;
      for (int k = 0; k < 4; ++k) {
        if (k != j) rows[ri++] = k;
        if (k != i) cols[ci++] = k;
      }
      int minor = 0;
      minor += a.m[rows[0]][cols[0]] * (a.m[rows[1]][cols[1]] * a.m[rows[2]][cols[2]] -
                                        a.m[rows[1]][cols[2]] * a.m[rows[2]][cols[1]]);
      minor -= a.m[rows[0]][cols[1]] * (a.m[rows[1]][cols[0]] * a.m[rows[2]][cols[2]] -
                                        a.m[rows[1]][cols[2]] * a.m[rows[2]][cols[0]]);
      minor += a.m[rows[0]][cols[2]] * (a.m[rows[1]][cols[0]] * a.m[rows[2]][cols[1]] -
                                        a.m[rows[1]][cols[1]] * a.m[rows[2]][cols[0]]);
      int sgn = ((i + j) % 2 == 0) ? 1 : -1;
      r.m[i][j] = sgn * minor * d;  // d = 1/d for unimodular
    }
  check(compose(a, r) == Mat4::identity(), "inverse check");
  return r;
}

using Vec4 = std::array<int64_t, 4>;

inline Vec4 act(const Mat4& a, const Vec4& v) {
  Vec4 w{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) w[i] += a.m[i][j] * v[j];
  return w;
}

// ---------------------------------------------------------------------------
// Q(tau)[s] with s^2 = 3 - tau: closes both radical entry families of the
// planar projection and irrep, so the intertwining identity is checked by
// pure ring arithmetic. Note sqrt(tau+2) = tau * s since tau^2 (3-tau) = tau+2.

struct QTauExt {
  QTau x, y;  // x + y s
  bool operator==(const QTauExt& o) const { return x == o.x && y == o.y; }
};

inline QTauExt operator+(const QTauExt& u, const QTauExt& v) {
  return {u.x + v.x, u.y + v.y};
}
inline QTauExt operator-(const QTauExt& u, const QTauExt& v) {
  return {u.x - v.x, u.y - v.y};
}
inline QTauExt operator*(const QTauExt& u, const QTauExt& v) {
  QTau s2{Rational(3), Rational(-1)};
  return {u.x * v.x + u.y * v.y * s2, u.x * v.y + u.y * v.x};
}

struct A4Chain {
  FiniteGroup<Mat4> h;       // dihedral of order 10
  FiniteGroup<Mat4> k;       // its unique proper extension, order 20
  FiniteGroup<Mat4> lambda;  // the full lattice group, order 120

  // Projection onto the invariant plane, prefactor 1/sqrt(2(3-tau)) and the
  // row-1 factor sqrt(3-tau) both carried implicitly:
  //   q1 = (tau-1)v1 + v2 - v4
  //   q2 = -v1 + (2-tau)v2 + (2tau-2)v3 + (2-tau)v4
  // so the physical point is (q1/sqrt2, q2/sqrt(2(3-tau))).
  static ZTau q1(const Vec4& v) { return ZTau{-v[0] + v[1] - v[3], v[0]}; }
  static ZTau q2(const Vec4& v) {
    return ZTau{-v[0] + 2 * v[1] - 2 * v[2] + 2 * v[3],
                -v[1] + 2 * v[2] - v[3]};
  }
  // Squared planar radius with the 1/(2(3-tau)) factor divided out.
  static ZTau rad2(const Vec4& v) {
    ZTau a = q1(v), b = q2(v);
    return ZTau{3, -1} * a * a + b * b;
  }
  static std::pair<double, double> plane_point(const Vec4& v) {
    static const double inv_sqrt2 = 0.70710678118654752440;
    static const double s3t = std::sqrt(3.0 - (1.0 + std::sqrt(5.0)) / 2.0);
    return {to_double(q1(v)) * inv_sqrt2,
            to_double(q2(v)) * inv_sqrt2 / s3t};
  }
};

namespace detail {

inline Mat4 mat4_from_rows(const int (&rows)[4][4]) {
  Mat4 a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a.m[i][j] = rows[i][j];
  return a;
}

// Lattice-group matrix of a permutation sigma of {1..5} acting on the root
// basis: column j holds the root coordinates of e_{sigma(j)} - e_{sigma(j+1)},
// where e_k - e_l = sum of roots alpha_k..alpha_{l-1} (negated when k > l).
inline Mat4 root_matrix(const std::array<int, 5>& sigma) {
  Mat4 a;
  for (int j = 0; j < 4; ++j) {
    int k = sigma[j], l = sigma[j + 1];
    int lo = std::min(k, l), hi = std::max(k, l);
    int sgn = k < l ? 1 : -1;
    for (int t = lo; t < hi; ++t) a.m[t - 1][j] = sgn;
  }
  return a;
}

inline int mat4_order(const Mat4& g) {
  Mat4 x = g;
  int k = 1;
  while (!(x == Mat4::identity())) {
    x = compose(g, x);
    ++k;
    check(k <= 120, "order bounded by the group order");
  }
  return k;
}

}  // namespace detail

// Builds and fully verifies the planar five-fold chain: the order-10 and
// order-20 matrix groups, the lattice group of order 120 built from
// permutations of five letters, the subgroup lattice between them, the
// exact intertwining of projection and irrep, and the abstract isomorphism
// of the middle group with Hol(Z_5).
inline A4Chain a4_case() {
  A4Chain c;
  static const int h1r[4][4] = {
      {1, 0, 0, 0}, {1, 0, 0, -1}, {1, 0, -1, 0}, {1, -1, 0, 0}};
  static const int h2r[4][4] = {
      {-1, 1, 0, 0}, {0, 1, 0, 0}, {0, 1, 0, -1}, {0, 1, -1, 0}};
  static const int k1r[4][4] = {
      {0, -1, 1, 0}, {-1, 0, 1, 0}, {0, 0, 1, 0}, {0, 0, 1, -1}};
  static const int k2r[4][4] = {
      {0, 0, 0, -1}, {1, 0, 0, -1}, {0, 1, 0, -1}, {0, 0, 1, -1}};
  static const int k3r[4][4] = {
      {1, 0, 0, 0}, {1, 0, -1, 1}, {0, 1, -1, 1}, {0, 1, -1, 0}};
  Mat4 h1 = detail::mat4_from_rows(h1r);
  Mat4 h2 = detail::mat4_from_rows(h2r);
  Mat4 k1 = detail::mat4_from_rows(k1r);
  Mat4 k2 = detail::mat4_from_rows(k2r);
  Mat4 k3 = detail::mat4_from_rows(k3r);

  c.h = materialize(std::vector<Mat4>{h1, h2});
  c.k = materialize(std::vector<Mat4>{k1, k2, k3});
  check(c.h.order() == 10, "dihedral matrix group order");
  check(c.k.order() == 20, "extension matrix group order");
  check(c.k.contains_group(c.h), "dihedral group sits inside the extension");
  check(is_normal(c.h, c.k), "dihedral group is normal in the extension");

  // Lattice group from all permutations of five letters, cross-checked
  // against closure of two generators.
  std::array<int, 5> sigma{1, 2, 3, 4, 5};
  std::vector<Mat4> all;
  do {
    all.push_back(detail::root_matrix(sigma));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  std::sort(all.begin(), all.end());
  check(std::unique(all.begin(), all.end()) == all.end(),
        "faithful action on the root basis");
  Mat4 swap01 = detail::root_matrix({2, 1, 3, 4, 5});
  Mat4 cycle5 = detail::root_matrix({2, 3, 4, 5, 1});
  c.lambda = materialize(std::vector<Mat4>{swap01, cycle5});
  check(c.lambda.order() == 120, "lattice group order");
  check(c.lambda.elements == all, "closure equals the permutation image");
  check(c.lambda.contains_group(c.k), "extension sits in the lattice group");

  // Subgroup chain: the extension is the unique order-20 overgroup.
  std::vector<FiniteGroup<Mat4>> over = overgroups_within(c.h, c.lambda);
  check(over.size() == 4, "overgroup family size");
  std::vector<size_t> orders;
  for (const auto& g : over) orders.push_back(g.order());
  check((orders == std::vector<size_t>{10, 20, 60, 120}),
        "overgroup family orders");
  check(over[1].same_elements(c.k), "the order-20 member is the extension");

  // Exact intertwining: with P the unscaled projection rows over
  // Q(tau)[s], P H(g) = rho2(g) P for both generator pairs.
  auto qt = [](int64_t a, int64_t b) {
    return QTau{Rational(a), Rational(b)};
  };
  QTau half{Rational(1, 2), Rational(0)};
  QTauExt zero{qt(0, 0), qt(0, 0)};
  std::array<std::array<QTauExt, 4>, 2> P{};
  P[0] = {QTauExt{qt(0, 0), qt(-1, 1)}, QTauExt{qt(0, 0), qt(1, 0)},
          QTauExt{qt(0, 0), qt(0, 0)}, QTauExt{qt(0, 0), qt(-1, 0)}};
  P[1] = {QTauExt{qt(-1, 0), qt(0, 0)}, QTauExt{qt(2, -1), qt(0, 0)},
          QTauExt{qt(-2, 2), qt(0, 0)}, QTauExt{qt(2, -1), qt(0, 0)}};
  std::array<std::array<QTauExt, 2>, 2> r1{}, r2{};
  r1[0] = {QTauExt{qt(1, 0), qt(0, 0)}, zero};
  r1[1] = {zero, QTauExt{qt(-1, 0), qt(0, 0)}};
  // second reflection: (1/2)((tau-1), sqrt(tau+2); sqrt(tau+2), 1-tau),
  // with sqrt(tau+2) = tau s; the product r1 r2 is the order-5 rotation.
  r2[0] = {QTauExt{qt(-1, 1) * half, qt(0, 0)},
           QTauExt{qt(0, 0), qt(0, 1) * half}};
  r2[1] = {QTauExt{qt(0, 0), qt(0, 1) * half},
           QTauExt{qt(1, -1) * half, qt(0, 0)}};
  auto intertwines = [&](const Mat4& g,
                         const std::array<std::array<QTauExt, 2>, 2>& rho) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 4; ++j) {
        QTauExt lhs = zero, rhs = zero;
        for (int t = 0; t < 4; ++t) {
          QTauExt e{qt(g.m[t][j], 0), qt(0, 0)};
          lhs = lhs + P[i][t] * e;
        }
        for (int t = 0; t < 2; ++t) rhs = rhs + rho[i][t] * P[t][j];
        if (!(lhs == rhs)) return false;
      }
    return true;
  };
  check(intertwines(h1, r1), "projection intertwines the first generator");
  check(intertwines(h2, r2), "projection intertwines the second generator");

  // Abstract identification of the extension with Hol(Z_5): generators of
  // orders 5 and 4 with b a b^-1 = a^2 generate it, matching the holomorph
  // presentation, whose own model satisfies the same relations.
  {
    HolGroup hol = hol_group(5);
    HolElement R{1, 1}, S{2, 0};
    check(hol.element_order(R) == 5 && hol.element_order(S) == 4,
          "holomorph generator orders");
    HolElement lhs = hol.compose(hol.compose(S, R), hol.inverse(S));
    check(lhs == hol.compose(R, R), "holomorph defining relation");
    bool found = false;
    for (const Mat4& a : c.k.elements) {
      if (detail::mat4_order(a) != 5) continue;
      for (const Mat4& b : c.k.elements) {
        if (detail::mat4_order(b) != 4) continue;
        Mat4 conj = compose(compose(b, a), inverse(b));
        if (conj != compose(a, a)) continue;
        if (materialize(std::vector<Mat4>{a, b}).order() == 20) {
          found = true;
          break;
        }
      }
      if (found) break;
    }
    check(found, "extension realizes the holomorph presentation");
  }
  return c;
}

// Orbit of a root-coordinate lattice point under a matrix group, layered by
// exact squared planar radius.
struct A4Layer {
  ZTau rad2;
  std::vector<Vec4> points4;                      // sorted, distinct
  std::vector<std::pair<double, double>> points;  // projected
};

struct A4Orbit {
  Vec4 seed{};
  size_t total_points = 0;
  std::vector<A4Layer> layers;  // ascending radius
};

inline A4Orbit a4_orbit(const FiniteGroup<Mat4>& g, const Vec4& v) {
  A4Orbit out;
  out.seed = v;
  std::vector<Vec4> pts;
  pts.reserve(g.order());
  for (const Mat4& e : g.elements) pts.push_back(act(e, v));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::map<ZTau, A4Layer> by_rad;
  for (const Vec4& p : pts) {
    ZTau r = A4Chain::rad2(p);
    A4Layer& l = by_rad[r];
    l.rad2 = r;
    l.points4.push_back(p);
    l.points.push_back(A4Chain::plane_point(p));
  }
  for (auto& [r, l] : by_rad) {
    out.total_points += l.points4.size();
    out.layers.push_back(std::move(l));
  }
  return out;
}

}  // namespace orbshell

#endif
