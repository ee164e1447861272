#ifndef ORBSHELL_SIGNED_PERM_HPP_
#define ORBSHELL_SIGNED_PERM_HPP_

#include <array>
#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "orbshell/base.hpp"

namespace orbshell {

using Mat6 = std::array<std::array<int, 6>, 6>;

// Signed 6x6 permutation (a,pi): as a matrix, column j carries (-1)^{a_j} in
// row pi(j). Signs are indexed by the source coordinate. Group law matches
// matrix multiplication: (a,pi)(b,sigma) = (a_sigma + b, pi sigma).
struct SignedPerm {
  std::array<uint8_t, 6> pi{0, 1, 2, 3, 4, 5};  // pi[j] = image of j, 0-based
  uint8_t signs = 0;                            // bit j = a_j

  static SignedPerm identity() { return SignedPerm{}; }

  bool sign_bit(int j) const { return (signs >> j) & 1; }

  bool operator==(const SignedPerm& o) const { return pi == o.pi && signs == o.signs; }
  bool operator!=(const SignedPerm& o) const { return !(*this == o); }
};

inline SignedPerm compose(const SignedPerm& p, const SignedPerm& q) {
  // to_matrix(compose(p,q)) = to_matrix(p) * to_matrix(q): apply q, then p.
  SignedPerm r;
  r.signs = 0;
  for (int j = 0; j < 6; ++j) {
    r.pi[j] = p.pi[q.pi[j]];
    if (q.sign_bit(j) ^ p.sign_bit(q.pi[j])) r.signs |= uint8_t(1u << j);
  }
  return r;
}

inline SignedPerm inverse(const SignedPerm& p) {
  SignedPerm r;
  r.signs = 0;
  for (int j = 0; j < 6; ++j) {
    r.pi[p.pi[j]] = uint8_t(j);
    if (p.sign_bit(j)) r.signs |= uint8_t(1u << p.pi[j]);
  }
  return r;
}

// w[pi(j)] = (-1)^{a_j} v[j]
template <class Vec>
inline Vec act(const SignedPerm& p, const Vec& v) {
  Vec w{};
  for (int j = 0; j < 6; ++j) w[p.pi[j]] = p.sign_bit(j) ? -v[j] : v[j];
  return w;
}

inline Mat6 to_matrix(const SignedPerm& p) {
  Mat6 m{};
  for (int j = 0; j < 6; ++j) m[p.pi[j]][j] = p.sign_bit(j) ? -1 : 1;
  return m;
}

inline Mat6 mat6_mul(const Mat6& x, const Mat6& y) {
  Mat6 r{};
  for (int i = 0; i < 6; ++i)
    for (int k = 0; k < 6; ++k) {
      if (x[i][k] == 0) continue;
      for (int j = 0; j < 6; ++j) r[i][j] += x[i][k] * y[k][j];
    }
  return r;
}

// Dense encoding: Lehmer rank of pi in [0,720) * 64 | signs. A bijection onto
// [0, 46080), used for element sets and bitmap membership.
constexpr uint32_t kB6Order = 46080;

inline uint32_t encode(const SignedPerm& p) {
  uint32_t rank = 0;
  for (int i = 0; i < 6; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < 6; ++j)
      if (p.pi[j] < p.pi[i]) ++smaller;
    static constexpr int fact[6] = {120, 24, 6, 2, 1, 1};
    rank += uint32_t(smaller * fact[i]);
  }
  return rank * 64 + p.signs;
}

inline SignedPerm decode(uint32_t code) {
  SignedPerm p;
  p.signs = uint8_t(code & 63u);
  uint32_t rank = code / 64;
  bool used[6] = {};
  static constexpr int fact[6] = {120, 24, 6, 2, 1, 1};
  for (int i = 0; i < 6; ++i) {
    uint32_t d = rank / uint32_t(fact[i]);
    rank %= uint32_t(fact[i]);
    int count = 0;
    for (int j = 0; j < 6; ++j) {
      if (used[j]) continue;
      if (count == int(d)) {
        p.pi[i] = uint8_t(j);
        used[j] = true;
        break;
      }
      ++count;
    }
  }
  return p;
}

inline bool operator<(const SignedPerm& x, const SignedPerm& y) {
  return encode(x) < encode(y);
}

// ---------------------------------------------------------------------------
// Permutations of {1..12} and the embedding of signed 6-permutations:
// phi(a,pi)(k) = pi(k) + 6 a_k for k <= 6, and pi(k-6) + 6(1 - a_{k-6}) above.
struct Perm12 {
  std::array<uint8_t, 12> img{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};  // 0-based

  static Perm12 identity() { return Perm12{}; }
  bool operator==(const Perm12& o) const { return img == o.img; }
};

inline Perm12 compose(const Perm12& p, const Perm12& q) {
  Perm12 r;
  for (int k = 0; k < 12; ++k) r.img[k] = p.img[q.img[k]];
  return r;
}

inline Perm12 to_perm12(const SignedPerm& p) {
  Perm12 r;
  for (int j = 0; j < 6; ++j) {
    r.img[j] = uint8_t(p.pi[j] + (p.sign_bit(j) ? 6 : 0));
    r.img[j + 6] = uint8_t(p.pi[j] + (p.sign_bit(j) ? 0 : 6));
  }
  return r;
}

inline SignedPerm from_perm12(const Perm12& p) {
  SignedPerm r;
  r.signs = 0;
  for (int j = 0; j < 6; ++j) {
    int x = p.img[j], y = p.img[j + 6];
    if ((x + 6) % 12 != y)
      throw NotInImage("permutation does not pair k with k+6 on axis " +
                       std::to_string(j + 1));
    r.pi[j] = uint8_t(x % 6);
    if (x >= 6) r.signs |= uint8_t(1u << j);
  }
  return r;
}

// Cycle notation, 1-based, e.g. "(1,6)(2,5)(3,9)(4,10)(7,12)(8,11)".
// The identity renders as "()". Whitespace between tokens is ignored.
inline Perm12 parse_cycles(const std::string& s) {
  Perm12 p;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  skip_ws();
  if (i == s.size()) throw ParseError("empty cycle string");
  bool any = false;
  while (i < s.size()) {
    skip_ws();
    if (i == s.size()) break;
    if (s[i] != '(') throw ParseError("expected '(' at position " + std::to_string(i));
    ++i;
    std::vector<int> cyc;
    while (true) {
      skip_ws();
      if (i < s.size() && s[i] == ')') {
        ++i;
        break;
      }
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j == i) throw ParseError("expected digit at position " + std::to_string(i));
      int v = std::stoi(s.substr(i, j - i));
      if (v < 1 || v > 12) throw ParseError("point out of range: " + std::to_string(v));
      cyc.push_back(v - 1);
      i = j;
      skip_ws();
      if (i < s.size() && s[i] == ',') ++i;
    }
    for (size_t k = 0; k < cyc.size(); ++k) {
      int from = cyc[k], to = cyc[(k + 1) % cyc.size()];
      if (cyc.size() > 1) {
        if (p.img[from] != from)
          throw ParseError("point repeated across cycles: " + std::to_string(from + 1));
        p.img[from] = uint8_t(to);
      }
    }
    any = true;
  }
  if (!any) throw ParseError("no cycles found");
  bool seen[12] = {};
  for (int k = 0; k < 12; ++k) {
    if (seen[p.img[k]]) throw ParseError("not a bijection");
    seen[p.img[k]] = true;
  }
  return p;
}

// Canonical print: cycles ordered by smallest member, each starting at it;
// fixed points omitted; identity prints "()".
inline std::string print_cycles(const Perm12& p) {
  std::string out;
  bool seen[12] = {};
  for (int k = 0; k < 12; ++k) {
    if (seen[k] || p.img[k] == k) continue;
    out += '(';
    int j = k;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += ',';
      out += std::to_string(j + 1);
      first = false;
      j = p.img[j];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

inline SignedPerm parse_signed_perm(const std::string& cycles) {
  return from_perm12(parse_cycles(cycles));
}

}  // namespace orbshell

#endif
