#ifndef ORBSHELL_ICOSA_HPP_
#define ORBSHELL_ICOSA_HPP_

#include <array>
#include <cstdint>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "orbshell/base.hpp"
#include "orbshell/group.hpp"
#include "orbshell/qtau.hpp"
#include "orbshell/signed_perm.hpp"

namespace orbshell {

using Vec6 = std::array<int64_t, 6>;
using QTau3 = std::array<QTau, 3>;

inline int qtau3_cmp(const QTau3& x, const QTau3& y) {
  for (int i = 0; i < 3; ++i) {
    int c = qtau_cmp(x[i], y[i]);
    if (c != 0) return c;
  }
  return 0;
}

struct QTau3Less {
  bool operator()(const QTau3& x, const QTau3& y) const {
    return qtau3_cmp(x, y) < 0;
  }
};

// Generators as published, 1-based cycle notation on 12 letters. The first
// entry is the six-dimensional representation of the rotation icosahedral
// group (order 60); the last is the full hyperoctahedral group B6.
struct GroupTable {
  const char* label;
  size_t order;
  std::vector<const char*> gens;
};

inline const std::vector<GroupTable>& catalog_table() {
  static const std::vector<GroupTable> t = {
      {"G1", 60,
       {"(1,6)(2,5)(3,9)(4,10)(7,12)(8,11)",
        "(1,5,6)(2,9,4)(7,11,12)(3,10,8)"}},
      {"G2", 120,
       {"(1,6)(2,5)(3,9)(4,10)(7,12)(8,11)",
        "(1,5,6)(2,9,4)(7,11,12)(3,10,8)",
        "(1,7)(2,8)(3,9)(4,10)(5,11)(6,12)"}},
      {"G3", 240,
       {"(3,11)(4,12)(5,9)(6,10)", "(2,3,5,4)(6,12)(8,9,11,10)",
        "(1,2)(3,5)(7,8)(9,11)"}},
      {"G4", 1920,
       {"(1,3)(2,8)(4,5,10,11)(7,9)", "(1,3,4,7,9,10)(2,5,12,8,11,6)"}},
      {"G5", 3840,
       {"(1,8,9,7,2,3)(4,6,5)(10,12,11)", "(1,2)(3,5)(7,8)(9,11)",
        "(4,10)"}},
      {"G6", 3840,
       {"(3,9)(6,12)", "(3,4,5,6)(9,10,11,12)", "(1,7)(6,12)",
        "(1,2,9,10,11,7,8,3,4,5)(6,12)"}},
      {"G7", 3840,
       {"(1,7)(6,12)", "(2,8)(6,12)", "(1,2,9,10,11,7,8,3,4,5)(6,12)",
        "(3,4,5,12,9,10,11,6)"}},
      {"G8", 7680,
       {"(1,8,9,7,2,3)(4,6,5)(10,12,11)", "(1,2)(3,5)(7,8)(9,11)",
        "(3,4,5,6)(9,10,11,12)", "(4,10)"}},
      {"G9", 11520,
       {"(2,8)(6,12)", "(1,7)(2,5,3)(6,12)(8,11,9)", "(1,3,7,9)(2,12,8,6)",
        "(1,3,2,7,9,8)(4,5,12,10,11,6)"}},
      {"G10", 23040,
       {"(1,2,6,4,3)(7,8,12,10,9)", "(5,11)(6,12)",
        "(1,2,6,5,3)(7,8,12,11,9)", "(5,12,11,6)"}},
      {"G11", 23040,
       {"(1,8,9,7,2,3)", "(1,7)(2,3,4)(8,9,10)", "(1,7)(2,3,5)(8,9,11)",
        "(2,6,3,5,4)(8,12,9,11,10)", "(5,11)"}},
      {"G12", 23040,
       {"(2,8)(6,12)", "(1,2,6,5,3)(7,8,12,11,9)", "(5,6)(11,12)",
        "(1,2,6,4,3)(7,8,12,10,9)"}},
      {"G13", 46080,
       {"(1,2)(7,8)", "(1,2,3,4,5,6)(7,8,9,10,11,12)", "(6,12)"}},
  };
  return t;
}

inline constexpr const char* kCentralInversionCycles =
    "(1,7)(2,8)(3,9)(4,10)(5,11)(6,12)";

inline FiniteGroup<SignedPerm> group_from_cycles(
    const std::vector<const char*>& cycle_strings) {
  std::vector<SignedPerm> gens;
  for (const char* s : cycle_strings) gens.push_back(parse_signed_perm(s));
  return materialize(std::move(gens));
}

using Mat3T = std::array<std::array<ZTau, 3>, 3>;
using ProjRows = std::array<std::array<ZTau, 6>, 3>;

// Six-dimensional crystallographic embedding of icosahedral symmetry.
// `proj` holds the three rows of the parallel (physical-space) projection
// with the overall factor 1/sqrt(2(2+tau)) left out, so all entries live in
// Z[tau] and every projected lattice point has exact Z[tau] coordinates.
struct IcosaEmbedding {
  SignedPerm g2, g3;       // two- and three-fold rotation generators
  SignedPerm minus_one;    // central inversion: all six signs flipped
  FiniteGroup<SignedPerm> icosa;    // rotation group, order 60
  FiniteGroup<SignedPerm> achiral;  // with inversion, order 120

  ProjRows proj;

  std::array<ZTau, 3> project(const Vec6& v) const {
    std::array<ZTau, 3> out{};
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 6; ++k) out[i] = out[i] + proj[i][k] * v[k];
    return out;
  }

  // Squared Euclidean length of the projected point, carrying the same
  // omitted factor squared: true |x|^2 times 2(2+tau).
  ZTau rad2(const Vec6& v) const {
    auto p = project(v);
    ZTau s{0, 0};
    for (int i = 0; i < 3; ++i) s = s + p[i] * p[i];
    return s;
  }

  // Twice the rotation matrix acting on physical space, entries in Z[tau]:
  // T1(g) = P M(g) P^t / (2(2+tau)), and 1/(2+tau) = (3-tau)/5.
  Mat3T t1x2(const SignedPerm& g) const {
    Mat6 m = to_matrix(g);
    std::array<std::array<ZTau, 6>, 3> a{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 6; ++j) {
        ZTau s{0, 0};
        for (int k = 0; k < 6; ++k) s = s + proj[i][k] * m[k][j];
        a[i][j] = s;
      }
    Mat3T out{};
    const ZTau three_minus_tau{3, -1};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        ZTau s{0, 0};
        for (int k = 0; k < 6; ++k) s = s + a[i][k] * proj[j][k];
        s = s * three_minus_tau;
        check(s.a % 5 == 0 && s.b % 5 == 0,
              "rotation matrix must be half-integral over Z[tau]");
        out[i][j] = ZTau{s.a / 5, s.b / 5};
      }
    return out;
  }
};

inline IcosaEmbedding build_embedding() {
  IcosaEmbedding e;
  const auto& table = catalog_table();
  e.g2 = parse_signed_perm(table[0].gens[0]);
  e.g3 = parse_signed_perm(table[0].gens[1]);
  e.minus_one = parse_signed_perm(kCentralInversionCycles);
  e.icosa = materialize(std::vector<SignedPerm>{e.g2, e.g3});
  e.achiral = materialize(std::vector<SignedPerm>{e.g2, e.g3, e.minus_one});

  static const int pa[3][6] = {{0, 0, -1, 0, 0, 1},
                               {1, 0, 0, 0, -1, 0},
                               {0, 1, 0, 1, 0, 0}};
  static const int pb[3][6] = {{1, 0, 0, 0, 1, 0},
                               {0, 1, 0, -1, 0, 0},
                               {0, 0, 1, 0, 0, 1}};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 6; ++k) e.proj[i][k] = ZTau{pa[i][k], pb[i][k]};

  check(e.icosa.order() == 60, "rotation group order");
  check(e.achiral.order() == 120, "achiral group order");
  check(compose(e.g2, e.g2) == SignedPerm::identity(), "g2 is an involution");
  SignedPerm g3cube = compose(e.g3, compose(e.g3, e.g3));
  check(g3cube == SignedPerm::identity(), "g3 has order 3");
  SignedPerm g23 = compose(e.g2, e.g3);
  SignedPerm acc = SignedPerm::identity();
  for (int i = 0; i < 5; ++i) acc = compose(g23, acc);
  check(acc == SignedPerm::identity(), "g2*g3 has order 5");

  // P P^t = 2(2+tau) I3.
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      ZTau s{0, 0};
      for (int k = 0; k < 6; ++k) s = s + e.proj[i][k] * e.proj[j][k];
      ZTau want = (i == j) ? ZTau{4, 2} : ZTau{0, 0};
      check(s == want, "projection rows orthogonal with norm 2(2+tau)");
    }

  // P M(g) = T1(g) P for the generators: the projection intertwines the
  // lattice action with the physical rotation.
  for (const SignedPerm& g : {e.g2, e.g3}) {
    Mat6 m = to_matrix(g);
    Mat3T t = e.t1x2(g);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 6; ++j) {
        ZTau lhs{0, 0};
        for (int k = 0; k < 6; ++k) lhs = lhs + e.proj[i][k] * m[k][j];
        lhs = lhs * ZTau{2, 0};
        ZTau rhs{0, 0};
        for (int k = 0; k < 3; ++k) rhs = rhs + t[i][k] * e.proj[k][j];
        check(lhs == rhs, "projection must intertwine the two actions");
      }
    // 2T (2T)^t = 4 I3: T1(g) is orthogonal.
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        ZTau s{0, 0};
        for (int k = 0; k < 3; ++k) s = s + t[i][k] * t[j][k];
        ZTau want = (i == j) ? ZTau{4, 0} : ZTau{0, 0};
        check(s == want, "rotation matrix orthogonality");
      }
  }
  return e;
}

// Directed rotation-axis ends of the icosahedral group in physical space.
// Exact directions are held in a projective normal form: the first nonzero
// coordinate is +1 or -1, so two ends are equal iff their forms are equal.
struct AxisEnd {
  int fold;    // 5, 3 or 2
  QTau3 dir;   // normal form
  std::array<double, 3> unit;
};

inline QTau3 axis_normal_form(const QTau3& v) {
  int j = 0;
  while (j < 3 && v[j].is_zero()) ++j;
  check(j < 3, "axis direction must be nonzero");
  QTau scale = inverse(v[j]);
  if (qtau_sign(v[j]) < 0) scale = QTau{0, 0} - scale;
  QTau3 out;
  for (int i = 0; i < 3; ++i) out[i] = v[i] * scale;
  return out;
}

namespace detail {

// Nullspace direction of a singular 3x3 matrix of rank 2 over Q(tau).
inline QTau3 nullspace_dir(std::array<std::array<QTau, 3>, 3> m) {
  int pivot_row[3] = {-1, -1, -1};  // pivot_row[col]
  int used[3] = {0, 0, 0};
  int rank = 0;
  for (int c = 0; c < 3; ++c) {
    int r = -1;
    for (int i = 0; i < 3; ++i)
      if (!used[i] && !m[i][c].is_zero()) {
        r = i;
        break;
      }
    if (r < 0) continue;
    used[r] = 1;
    pivot_row[c] = r;
    ++rank;
    QTau inv = inverse(m[r][c]);
    for (int k = 0; k < 3; ++k) m[r][k] = m[r][k] * inv;
    for (int i = 0; i < 3; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      QTau f = m[i][c];
      for (int k = 0; k < 3; ++k) m[i][k] = m[i][k] - f * m[r][k];
    }
  }
  check(rank == 2, "rotation fixes exactly one line");
  int free_col = 0;
  while (pivot_row[free_col] >= 0) ++free_col;
  QTau3 x{QTau{0, 0}, QTau{0, 0}, QTau{0, 0}};
  x[free_col] = QTau{1, 0};
  for (int c = 0; c < 3; ++c)
    if (pivot_row[c] >= 0) x[c] = QTau{0, 0} - m[pivot_row[c]][free_col];
  return x;
}

inline int element_order(const SignedPerm& g) {
  SignedPerm acc = g;
  int n = 1;
  while (!(acc == SignedPerm::identity())) {
    acc = compose(g, acc);
    ++n;
    check(n <= 60, "order bounded by the group order");
  }
  return n;
}

}  // namespace detail

inline std::vector<AxisEnd> axis_ends(const IcosaEmbedding& e) {
  std::map<QTau3, int, QTau3Less> fold_of;
  for (const SignedPerm& g : e.icosa.elements) {
    if (g == SignedPerm::identity()) continue;
    int ord = detail::element_order(g);
    Mat3T t = e.t1x2(g);
    std::array<std::array<QTau, 3>, 3> m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        m[i][j] = to_qtau(t[i][j]);
        if (i == j) m[i][j] = m[i][j] - QTau{2, 0};
      }
    QTau3 dir = detail::nullspace_dir(m);
    QTau3 neg{QTau{0, 0} - dir[0], QTau{0, 0} - dir[1], QTau{0, 0} - dir[2]};
    for (const QTau3& d : {dir, neg}) {
      QTau3 nf = axis_normal_form(d);
      auto it = fold_of.find(nf);
      if (it == fold_of.end())
        fold_of.emplace(nf, ord);
      else
        check(it->second == ord, "one rotation order per axis");
    }
  }
  std::vector<AxisEnd> ends;
  for (int fold : {5, 3, 2})
    for (const auto& [dir, f] : fold_of) {
      if (f != fold) continue;
      AxisEnd a;
      a.fold = fold;
      a.dir = dir;
      double n = 0;
      for (int i = 0; i < 3; ++i) {
        a.unit[i] = to_double(dir[i]);
        n += a.unit[i] * a.unit[i];
      }
      n = std::sqrt(n);
      for (int i = 0; i < 3; ++i) a.unit[i] /= n;
      ends.push_back(std::move(a));
    }
  check(ends.size() == 62, "62 directed axis ends");
  return ends;
}

inline void verify_h3_structure(const IcosaEmbedding& e) {
  // The inversion is central, lies outside the rotation group, and splits
  // the achiral group into two rotation-group cosets.
  check(!e.icosa.contains(e.minus_one), "inversion is not a rotation");
  check(e.achiral.contains(e.minus_one), "inversion generates the extension");
  for (const SignedPerm& g : e.achiral.gens)
    check(compose(g, e.minus_one) == compose(e.minus_one, g),
          "inversion is central");
  for (const SignedPerm& g : e.icosa.elements) {
    check(e.achiral.contains(g), "rotations embed in the achiral group");
    check(e.achiral.contains(compose(e.minus_one, g)),
          "inversion coset lies in the achiral group");
  }
  check(is_normal(e.icosa, e.achiral), "rotation subgroup is normal");
  Mat6 m = to_matrix(e.minus_one);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      check(m[i][j] == ((i == j) ? -1 : 0), "inversion acts as -1 on 6D");
  size_t n5 = 0, n3 = 0, n2 = 0;
  for (const AxisEnd& a : axis_ends(e)) {
    if (a.fold == 5) ++n5;
    if (a.fold == 3) ++n3;
    if (a.fold == 2) ++n2;
  }
  check(n5 == 12 && n3 == 20 && n2 == 30, "icosahedral axis census");
}

struct CatalogEntry {
  std::string label;
  std::vector<std::string> gen_cycles;
  FiniteGroup<SignedPerm> group;
  size_t index_over_icosa = 0;
};

struct Catalog {
  std::vector<CatalogEntry> entries;             // thirteen, ascending order
  std::vector<std::pair<int, int>> inclusions;   // all strict containments
  std::vector<std::pair<int, int>> hasse;        // transitive reduction
};

// from_appendix=true materializes the published generator lists. Otherwise
// the family is recomputed from scratch by closing the rotation group
// upward inside B6, then matched one-to-one against the published lists;
// any disagreement raises CatalogMismatch.
inline Catalog build_catalog(bool from_appendix = true) {
  Catalog cat;
  const auto& table = catalog_table();
  for (const auto& row : table) {
    CatalogEntry ce;
    ce.label = row.label;
    for (const char* s : row.gens) ce.gen_cycles.push_back(s);
    ce.group = group_from_cycles(row.gens);
    if (ce.group.order() != row.order)
      throw CatalogMismatch(ce.label + ": generator closure has order " +
                            std::to_string(ce.group.order()) + ", expected " +
                            std::to_string(row.order));
    ce.index_over_icosa = ce.group.order() / 60;
    cat.entries.push_back(std::move(ce));
  }
  for (size_t i = 1; i < cat.entries.size(); ++i)
    if (!cat.entries[i].group.contains_group(cat.entries[0].group))
      throw CatalogMismatch(cat.entries[i].label +
                            " does not contain the rotation group");

  if (!from_appendix) {
    std::vector<FiniteGroup<SignedPerm>> computed = overgroups_within(
        cat.entries[0].group, cat.entries.back().group);
    if (computed.size() != cat.entries.size())
      throw CatalogMismatch("recomputed family has " +
                            std::to_string(computed.size()) +
                            " members, expected " +
                            std::to_string(cat.entries.size()));
    std::vector<bool> matched(cat.entries.size(), false);
    for (const auto& g : computed) {
      bool hit = false;
      for (size_t i = 0; i < cat.entries.size(); ++i) {
        if (matched[i] || !cat.entries[i].group.same_elements(g)) continue;
        matched[i] = true;
        hit = true;
        break;
      }
      if (!hit)
        throw CatalogMismatch(
            "recomputed subgroup of order " + std::to_string(g.order()) +
            " does not appear in the published table");
    }
  }

  const int n = static_cast<int>(cat.entries.size());
  std::vector<std::vector<bool>> below(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (cat.entries[i].group.order() >= cat.entries[j].group.order())
        continue;
      if (cat.entries[j].group.contains_group(cat.entries[i].group)) {
        below[i][j] = true;
        cat.inclusions.emplace_back(i, j);
      }
    }
  for (auto [i, j] : cat.inclusions) {
    bool direct = true;
    for (int k = 0; k < n && direct; ++k)
      if (below[i][k] && below[k][j]) direct = false;
    if (direct) cat.hasse.emplace_back(i, j);
  }
  return cat;
}

}  // namespace orbshell

#endif
