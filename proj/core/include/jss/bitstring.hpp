#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace jss {

using BigInt = boost::multiprecision::cpp_int;

// Number of bits needed to address a space of `count` values: ceil(log2(count)),
// floored at 1 so a register always exists. Requires count >= 1.
int bit_width_for_count(const BigInt& count);

// Big-endian binary rendering of exactly `width` characters.
// Requires value >= 0 and value < 2^width.
std::string to_bitstring(const BigInt& value, int width);

// Inverse of to_bitstring; accepts only '0'/'1', at least one character.
BigInt from_bitstring(const std::string& bits);

}  // namespace jss
