#ifndef ORBSHELL_CYCLOTOMIC_HPP_
#define ORBSHELL_CYCLOTOMIC_HPP_

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "orbshell/base.hpp"
#include "orbshell/qtau.hpp"

namespace orbshell {

// Element of Z[xi_n] as a length-n coefficient vector over the powers
// xi^0..xi^{n-1}, kept unreduced: the representation is a quotient of
// Z[x]/(x^n - 1), so index maps stay trivial and equality is decided by
// remainder modulo the n-th cyclotomic polynomial.
struct CycInt {
  int n = 1;
  std::vector<int64_t> c;

  CycInt() : c(1, 0) {}
  explicit CycInt(int n_) : n(n_), c(static_cast<size_t>(n_), 0) {
    check(n_ >= 1, "modulus must be positive");
  }
  CycInt(int n_, std::vector<int64_t> coeffs) : n(n_), c(std::move(coeffs)) {
    check(static_cast<int>(c.size()) == n, "coefficient count equals modulus");
  }

  static CycInt xi_power(int n, int j) {
    CycInt z(n);
    z.c[static_cast<size_t>(((j % n) + n) % n)] = 1;
    return z;
  }
};

inline CycInt operator+(const CycInt& u, const CycInt& v) {
  check(u.n == v.n, "mixed moduli");
  CycInt w(u.n);
  for (int j = 0; j < u.n; ++j) w.c[j] = u.c[j] + v.c[j];
  return w;
}
inline CycInt operator-(const CycInt& u, const CycInt& v) {
  check(u.n == v.n, "mixed moduli");
  CycInt w(u.n);
  for (int j = 0; j < u.n; ++j) w.c[j] = u.c[j] - v.c[j];
  return w;
}
inline CycInt operator*(const CycInt& u, const CycInt& v) {
  check(u.n == v.n, "mixed moduli");
  CycInt w(u.n);
  for (int j = 0; j < u.n; ++j) {
    if (u.c[j] == 0) continue;
    for (int k = 0; k < u.n; ++k)
      w.c[(j + k) % u.n] += u.c[j] * v.c[k];
  }
  return w;
}

// Monic cyclotomic polynomial Phi_n as ascending coefficients:
// x^n - 1 divided by the product of Phi_d over proper divisors d of n.
inline std::vector<int64_t> cyclotomic_poly(int n) {
  check(n >= 1, "modulus must be positive");
  std::vector<int64_t> num(static_cast<size_t>(n) + 1, 0);
  num[0] = -1;
  num[static_cast<size_t>(n)] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    std::vector<int64_t> phi_d = cyclotomic_poly(d);
    // exact division of num by the monic phi_d
    std::vector<int64_t> q(num.size() - phi_d.size() + 1, 0);
    std::vector<int64_t> r = num;
    for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
      int64_t lead = r[i + phi_d.size() - 1];
      q[i] = lead;
      for (size_t k = 0; k < phi_d.size(); ++k)
        r[i + k] -= lead * phi_d[k];
    }
    for (int64_t x : r) check(x == 0, "cyclotomic division is exact");
    num = std::move(q);
  }
  return num;
}

// Canonical form: remainder of the coefficient polynomial mod Phi_n,
// padded to degree phi(n)-1. Equal ring elements share one canonical form.
inline std::vector<int64_t> cyc_canonical(const CycInt& u) {
  std::vector<int64_t> phi = cyclotomic_poly(u.n);
  std::vector<int64_t> r = u.c;
  r.resize(std::max(r.size(), phi.size()), 0);
  for (int i = static_cast<int>(r.size() - phi.size()); i >= 0; --i) {
    int64_t lead = r[i + phi.size() - 1];
    if (lead == 0) continue;
    for (size_t k = 0; k < phi.size(); ++k) r[i + k] -= lead * phi[k];
  }
  r.resize(phi.size() - 1);
  return r;
}

inline bool cyc_equal(const CycInt& u, const CycInt& v) {
  check(u.n == v.n, "mixed moduli");
  return cyc_canonical(u) == cyc_canonical(v);
}

// The affine Galois twist t_{m,l}: sum a_j xi^j -> sum a_j xi^{mj+l}.
// Bijective on the ring exactly when gcd(m,n) = 1.
inline CycInt cyc_apply_t(int64_t m, int64_t l, const CycInt& x) {
  int64_t n = x.n;
  if (std::gcd(((m % n) + n) % n, n) != 1)
    throw NotCoprime("t_{m,l} needs gcd(m,n)=1, got m=" + std::to_string(m) +
                     " n=" + std::to_string(n));
  CycInt w(x.n);
  for (int64_t j = 0; j < n; ++j) {
    int64_t k = (((m * j + l) % n) + n) % n;
    w.c[static_cast<size_t>(k)] += x.c[static_cast<size_t>(j)];
  }
  return w;
}

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

inline std::pair<double, double> cyc_complex(const CycInt& z) {
  double re = 0, im = 0;
  for (int j = 0; j < z.n; ++j) {
    double a = kTwoPi * j / z.n;
    re += static_cast<double>(z.c[j]) * std::cos(a);
    im += static_cast<double>(z.c[j]) * std::sin(a);
  }
  return {re, im};
}

// |z|^2 as a float for arbitrary n, via the complex value at xi = e^{2 pi i/n}.
inline double cyc_abs2(const CycInt& z) {
  auto [re, im] = cyc_complex(z);
  return re * re + im * im;
}

// Exact |z|^2 for n=5: with autocorrelations s_d = sum_j a_j a_{(j-d) mod 5},
// |z|^2 = s_0 + s_1 (xi+xi^4) + s_2 (xi^2+xi^3) = (s_0-s_1) + (s_1-s_2) tau,
// using 2cos(2pi/5) = tau-1 and 2cos(4pi/5) = -tau.
inline QTau cyc_abs2_exact5(const CycInt& z) {
  check(z.n == 5, "exact radius is the n=5 path");
  int64_t s[3] = {0, 0, 0};
  for (int d = 0; d < 3; ++d)
    for (int j = 0; j < 5; ++j) s[d] += z.c[j] * z.c[(j - d + 5) % 5];
  return {Rational(s[0] - s[1]), Rational(s[1] - s[2])};
}

}  // namespace orbshell

#endif
