#include "brc/rational.hpp"

#include <sstream>

namespace brc {

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
        return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac_len = s.size() - dot - 1;
        BigInt num(digits);
        BigInt den = 1;
        for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
        return Rational(num, den);
    }
    return Rational(BigInt(s));
}

std::string rational_to_string(const Rational& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << '/' << denominator(q);
    return os.str();
}

}  // namespace brc
