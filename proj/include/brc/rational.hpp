#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace brc {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Exact conversion: every finite double is a dyadic rational.
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite value");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double m = std::frexp(x, &exp);  // x = m * 2^exp, 0.5 <= |m| < 1
    auto mant = static_cast<long long>(std::ldexp(m, 53));
    exp -= 53;
    Rational r(mant);
    if (exp >= 0)
        r *= Rational(BigInt(1) << exp);
    else
        r /= Rational(BigInt(1) << -exp);
    return r;
}

// Accepts "3/4", "0.25" or plain integers.
Rational parse_rational(const std::string& s);
std::string rational_to_string(const Rational& q);

}  // namespace brc
