#pragma once

#include <string>
#include <string_view>

#include "qfe/errors.hpp"
#include "qfe/hfe.hpp"

namespace qfe::cli {

inline constexpr int kFormatVersion = 1;

/// Malformed or inconsistent input file / flag value.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Versioned JSON text. Doubles are written with 17 significant digits and
/// always carry a decimal point or exponent, so parsing restores every bit
/// (including the sign of zero).
std::string serialize(const MasterSecret& msk);
std::string serialize(const FunctionKey& fk, std::size_t message_length);
std::string serialize(const HfeCiphertext& ct);

MasterSecret parse_master_secret(std::string_view text);
/// Returns the key and the message length it was issued for.
std::pair<FunctionKey, std::size_t> parse_function_key(std::string_view text);
HfeCiphertext parse_ciphertext(std::string_view text);

/// "%.17g" with a forced ".0" when the result would read back as an integer.
std::string format_double(double v);

}  // namespace qfe::cli
