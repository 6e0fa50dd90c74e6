#include "qfe/bit.hpp"

#include <cstdlib>

namespace qfe {

BitString parse_bits(std::string_view text) {
  BitString out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '0') {
      out.push_back(kZero);
    } else if (c == '1') {
      out.push_back(kOne);
    } else {
      throw InvalidArgument("bitstring contains a character other than 0/1: '" +
                            std::string(text) + "'");
    }
  }
  return out;
}

std::string to_string(const BitString& bits) {
  std::string out;
  out.reserve(bits.size());
  for (Bit b : bits) out.push_back(b ? '1' : '0');
  return out;
}

std::string to_hex(const BitString& bits) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = (bits.size() + 3) / 4;
  const std::size_t pad = digits * 4 - bits.size();
  std::string out;
  out.reserve(digits);
  unsigned nibble = 0;
  for (std::size_t i = 0; i < digits * 4; ++i) {
    const unsigned v = i < pad ? 0u : bits[i - pad].value();
    nibble = (nibble << 1) | v;
    if (i % 4 == 3) {
      out.push_back(kDigits[nibble]);
      nibble = 0;
    }
  }
  return out;
}

BitString parse_hex(std::string_view hex, std::size_t length) {
  const std::size_t digits = (length + 3) / 4;
  if (hex.size() != digits) {
    throw InvalidArgument("hex string '" + std::string(hex) + "' must have " +
                          std::to_string(digits) + " digits for " +
                          std::to_string(length) + " bits");
  }
  BitString all;
  all.reserve(digits * 4);
  for (char c : hex) {
    unsigned v = 0;
    if (c >= '0' && c <= '9') {
      v = static_cast<unsigned>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      v = static_cast<unsigned>(c - 'a' + 10);
    } else if (c >= 'A' && c <= 'F') {
      v = static_cast<unsigned>(c - 'A' + 10);
    } else {
      throw InvalidArgument("invalid hex digit in '" + std::string(hex) + "'");
    }
    for (int k = 3; k >= 0; --k) all.push_back(Bit((v >> k) & 1u));
  }
  const std::size_t pad = all.size() - length;
  for (std::size_t i = 0; i < pad; ++i) {
    if (all[i]) {
      throw InvalidArgument("hex value '" + std::string(hex) + "' exceeds " +
                            std::to_string(length) + " bits");
    }
  }
  return BitString(all.begin() + static_cast<std::ptrdiff_t>(pad), all.end());
}

bool add_signed(BitString& bits, std::int64_t offset) {
  if (offset == 0) return true;
  const bool subtract = offset < 0;
  std::uint64_t magnitude = subtract ? 0 - static_cast<std::uint64_t>(offset)
                                     : static_cast<std::uint64_t>(offset);
  // Ripple carry/borrow from the least significant (last) bit.
  unsigned carry = 0;
  for (std::size_t i = bits.size(); i-- > 0;) {
    const unsigned operand = static_cast<unsigned>(magnitude & 1u);
    magnitude >>= 1;
    const unsigned cur = bits[i].value();
    if (subtract) {
      const int d = static_cast<int>(cur) - static_cast<int>(operand) -
                    static_cast<int>(carry);
      bits[i] = Bit(static_cast<unsigned>(d & 1));
      carry = d < 0 ? 1u : 0u;
    } else {
      const unsigned s = cur + operand + carry;
      bits[i] = Bit(s & 1u);
      carry = s >> 1;
    }
    if (magnitude == 0 && carry == 0) return true;
  }
  return magnitude == 0 && carry == 0;
}

}  // namespace qfe
