#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace powsim {

using Rational = boost::rational<std::int64_t>;

inline Rational hundredths(std::int64_t h) { return Rational(h, 100); }

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// True iff r is an integer number of hundredths.
inline bool is_hundredths(const Rational& r) { return 100 % r.denominator() == 0; }

/// lcm of two denominators with an overflow guard; sampling grids must stay in int64.
inline std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
    const std::int64_t g = std::gcd(a, b);
    const std::int64_t q = a / g;
    if (b > (std::int64_t{1} << 56) / q)
        throw std::overflow_error("denominator lcm exceeds sampling grid limit");
    return q * b;
}

}  // namespace powsim
