#include "jss/bitstring.hpp"

#include <stdexcept>

namespace jss {

int bit_width_for_count(const BigInt& count) {
  if (count < 1) throw std::invalid_argument("bit_width_for_count: count must be >= 1");
  if (count == 1) return 1;
  const BigInt top = count - 1;
  return static_cast<int>(boost::multiprecision::msb(top)) + 1;
}

std::string to_bitstring(const BigInt& value, int width) {
  if (value < 0) throw std::invalid_argument("to_bitstring: negative value");
  if (width < 1) throw std::invalid_argument("to_bitstring: width must be >= 1");
  if (value >> width != 0) throw std::invalid_argument("to_bitstring: value does not fit width");
  std::string out(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i) {
    if (boost::multiprecision::bit_test(value, i)) {
      out[static_cast<std::size_t>(width - 1 - i)] = '1';
    }
  }
  return out;
}

BigInt from_bitstring(const std::string& bits) {
  if (bits.empty()) throw std::invalid_argument("from_bitstring: empty string");
  BigInt value = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("from_bitstring: invalid character");
    value <<= 1;
    if (c == '1') value |= 1;
  }
  return value;
}

}  // namespace jss
