#ifndef ORBSHELL_RATIONAL_HPP_
#define ORBSHELL_RATIONAL_HPP_

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace orbshell {

// Arbitrary-precision integers and rationals. cpp_* backends keep the
// library header-only (no GMP link dependency).
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) { return r.str(); }

inline int sign_of(const Rational& r) { return r.sign(); }

}  // namespace orbshell

#endif
