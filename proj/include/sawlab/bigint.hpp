#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>

namespace sawlab {

using BigInt = boost::multiprecision::cpp_int;

// Natural log of a positive big integer, in double precision.
// Splits off the top 53 bits so the conversion never overflows.
inline double log_big(const BigInt& v) {
    if (v <= 0) throw std::domain_error("log_big: argument must be positive");
    const unsigned bits = boost::multiprecision::msb(v) + 1;
    if (bits <= 53) return std::log(v.convert_to<double>());
    const unsigned shift = bits - 53;
    const BigInt top = v >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

} // namespace sawlab
