#include "nambu/rational.hpp"

#include "nambu/errors.hpp"

namespace nambu {

std::string rational_to_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational rational_from_string(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    const auto slash = s.find('/');
    BigInt num, den(1);
    try {
        if (slash == std::string::npos) {
            num = BigInt(s);
        } else {
            num = BigInt(s.substr(0, slash));
            den = BigInt(s.substr(slash + 1));
        }
    } catch (const std::runtime_error&) {
        throw ParseError("bad rational literal '" + s + "'");
    }
    if (den == 0) throw ParseError("zero denominator in '" + s + "'");
    return Rational(num, den);
}

double rational_to_double(const Rational& r) {
    return r.convert_to<double>();
}

Rational rational_pow(const Rational& r, int k) {
    if (k < 0) throw DomainError("rational_pow: negative exponent");
    Rational acc(1);
    Rational base = r;
    while (k > 0) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

} // namespace nambu
