#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qfe/errors.hpp"

namespace qfe {

/// A classical bit. Construction from anything other than 0 or 1 throws.
class Bit {
 public:
  constexpr Bit() = default;
  constexpr explicit Bit(unsigned v) : value_(static_cast<std::uint8_t>(v)) {
    if (v > 1) throw InvalidArgument("bit value must be 0 or 1");
  }

  constexpr unsigned value() const noexcept { return value_; }
  constexpr explicit operator bool() const noexcept { return value_ != 0; }

  constexpr Bit operator^(Bit o) const noexcept { return Bit(value_ ^ o.value_); }
  constexpr Bit flipped() const noexcept { return Bit(value_ ^ 1u); }

  friend constexpr bool operator==(Bit, Bit) = default;
  friend constexpr auto operator<=>(Bit, Bit) = default;

 private:
  std::uint8_t value_ = 0;
};

inline constexpr Bit kZero{0};
inline constexpr Bit kOne{1};

using BitString = std::vector<Bit>;

/// Parses a string of '0'/'1' characters. Throws InvalidArgument otherwise.
BitString parse_bits(std::string_view text);
std::string to_string(const BitString& bits);

/// Big-endian hex of the bitstring read as an unsigned integer, padded to
/// ceil(n/4) digits. Lowercase.
std::string to_hex(const BitString& bits);
/// Inverse of to_hex for a known bit length. Rejects values >= 2^length and
/// digit counts other than ceil(length/4).
BitString parse_hex(std::string_view hex, std::size_t length);

/// Adds a signed offset to the big-endian unsigned integer held in `bits`.
/// Returns false (leaving `bits` unspecified) when the result leaves
/// [0, 2^n - 1].
bool add_signed(BitString& bits, std::int64_t offset);

}  // namespace qfe
