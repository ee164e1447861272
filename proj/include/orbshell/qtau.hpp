#ifndef ORBSHELL_QTAU_HPP_
#define ORBSHELL_QTAU_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "orbshell/base.hpp"
#include "orbshell/rational.hpp"

namespace orbshell {

// Elements of Q(tau), tau^2 = tau + 1, stored as a + b*tau.
// The real embedding tau = (1+sqrt5)/2 defines the total order.
struct QTau {
  Rational a, b;

  QTau() = default;
  QTau(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {}
  QTau(long x) : a(x), b(0) {}  // NOLINT: implicit by design

  static QTau tau() { return QTau(Rational(0), Rational(1)); }

  bool is_zero() const { return a == 0 && b == 0; }
  bool operator==(const QTau& o) const { return a == o.a && b == o.b; }
  bool operator!=(const QTau& o) const { return !(*this == o); }
};

inline QTau operator+(const QTau& u, const QTau& v) { return {u.a + v.a, u.b + v.b}; }
inline QTau operator-(const QTau& u, const QTau& v) { return {u.a - v.a, u.b - v.b}; }
inline QTau operator-(const QTau& u) { return {-u.a, -u.b}; }
inline QTau operator*(const QTau& u, const QTau& v) {
  // (a+b tau)(c+d tau) = ac+bd + (ad+bc+bd) tau
  return {u.a * v.a + u.b * v.b, u.a * v.b + u.b * v.a + u.b * v.b};
}

// Galois conjugation tau -> 1-tau: a + b*tau -> (a+b) - b*tau. Involution.
inline QTau galois_conj(const QTau& u) { return {u.a + u.b, -u.b}; }

// Field norm u * conj(u) = a^2 + ab - b^2; zero only at zero (tau irrational).
inline Rational qtau_norm(const QTau& u) { return u.a * u.a + u.a * u.b - u.b * u.b; }

inline QTau inverse(const QTau& u) {
  Rational n = qtau_norm(u);
  if (n == 0) fail("division by zero in Q(tau)");
  QTau c = galois_conj(u);
  return {c.a / n, c.b / n};
}
inline QTau operator/(const QTau& u, const QTau& v) { return u * inverse(v); }

// Sign of a + b*tau under tau = (1+sqrt5)/2, exactly: with p = 2a+b, q = b the
// value equals (p + q*sqrt5)/2; when p and q disagree in sign, compare p^2
// against 5 q^2 (they can never be equal for rational p,q not both zero).
inline int qtau_sign(const QTau& u) {
  Rational p = 2 * u.a + u.b;
  const Rational& q = u.b;
  int sp = sign_of(p), sq = sign_of(q);
  if (sp == 0) return sq;
  if (sq == 0 || sp == sq) return sp;
  int sc = (p * p < 5 * q * q) ? -1 : 1;  // |p| vs |q|sqrt5
  return sc > 0 ? sp : sq;
}

inline int qtau_cmp(const QTau& u, const QTau& v) { return qtau_sign(u - v); }
inline bool operator<(const QTau& u, const QTau& v) { return qtau_cmp(u, v) < 0; }

inline double to_double(const QTau& u) {
  static const double kTau = (1.0 + std::sqrt(5.0)) / 2.0;
  return to_double(u.a) + to_double(u.b) * kTau;
}

// Exact "a + b*tau" rendering: "0", "3", "tau", "-2*tau", "1 - 2*tau", ...
inline std::string to_exact_string(const QTau& u) {
  if (u.b == 0) return to_string(u.a);
  std::string bs;
  if (u.b == 1) bs = "tau";
  else if (u.b == -1) bs = "-tau";
  else bs = to_string(u.b) + "*tau";
  if (u.a == 0) return bs;
  if (sign_of(u.b) < 0) {
    QTau nb{Rational(0), -u.b};
    return to_string(u.a) + " - " + to_exact_string(nb);
  }
  return to_string(u.a) + " + " + bs;
}

// Decimal rendering to `digits` places after the point, computed from an
// integer sqrt(5) approximation with guard digits; exact to the rendered
// precision for the magnitudes this library produces.
inline std::string to_decimal_string(const QTau& u, int digits) {
  int guard = digits + 6;
  BigInt p10g = 1;
  for (int i = 0; i < guard; ++i) p10g *= 10;
  BigInt s5 = boost::multiprecision::sqrt(BigInt(5) * p10g * p10g);
  Rational approx = u.a + u.b * (Rational(1) + Rational(s5, p10g)) / 2;
  bool neg = approx < 0;
  if (neg) approx = -approx;
  BigInt p10d = 1;
  for (int i = 0; i < digits; ++i) p10d *= 10;
  // round half up on the scaled value
  BigInt scaled = (boost::multiprecision::numerator(approx) * p10d * 2 +
                   boost::multiprecision::denominator(approx)) /
                  (boost::multiprecision::denominator(approx) * 2);
  BigInt ip = scaled / p10d, fp = scaled % p10d;
  std::string f = fp.str();
  f.insert(f.begin(), static_cast<size_t>(digits) - f.size(), '0');
  std::string out = ip.str();
  if (digits > 0) out += "." + f;
  return neg && scaled != 0 ? "-" + out : out;
}

// Z[tau] with machine-word coefficients: the hot path for lattice geometry.
// All projected coordinates and squared radii of integer seeds live here.
struct ZTau {
  int64_t a = 0, b = 0;

  constexpr ZTau() = default;
  constexpr ZTau(int64_t a_, int64_t b_) : a(a_), b(b_) {}

  bool is_zero() const { return a == 0 && b == 0; }
  bool operator==(const ZTau& o) const { return a == o.a && b == o.b; }
  bool operator!=(const ZTau& o) const { return !(o == *this); }
};

inline ZTau operator+(ZTau u, ZTau v) { return {u.a + v.a, u.b + v.b}; }
inline ZTau operator-(ZTau u, ZTau v) { return {u.a - v.a, u.b - v.b}; }
inline ZTau operator-(ZTau u) { return {-u.a, -u.b}; }
inline ZTau operator*(ZTau u, ZTau v) {
  return {u.a * v.a + u.b * v.b, u.a * v.b + u.b * v.a + u.b * v.b};
}
inline ZTau operator*(ZTau u, int64_t s) { return {u.a * s, u.b * s}; }

inline int ztau_sign(ZTau u) {
  __int128 p = 2 * static_cast<__int128>(u.a) + u.b;
  __int128 q = u.b;
  int sp = p > 0 ? 1 : (p < 0 ? -1 : 0);
  int sq = q > 0 ? 1 : (q < 0 ? -1 : 0);
  if (sp == 0) return sq;
  if (sq == 0 || sp == sq) return sp;
  return (p * p < 5 * q * q) ? sq : sp;
}
inline int ztau_cmp(ZTau u, ZTau v) { return ztau_sign(u - v); }
inline bool operator<(ZTau u, ZTau v) { return ztau_cmp(u, v) < 0; }

inline QTau to_qtau(ZTau u) { return {Rational(u.a), Rational(u.b)}; }

inline double to_double(ZTau u) {
  static const double kTau = (1.0 + std::sqrt(5.0)) / 2.0;
  return static_cast<double>(u.a) + static_cast<double>(u.b) * kTau;
}

using ZTau3 = std::array<ZTau, 3>;

inline bool operator<(const ZTau3& u, const ZTau3& v) {
  for (int i = 0; i < 3; ++i) {
    if (u[i].a != v[i].a) return u[i].a < v[i].a;
    if (u[i].b != v[i].b) return u[i].b < v[i].b;
  }
  return false;
}

}  // namespace orbshell

#endif
