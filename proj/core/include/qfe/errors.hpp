#pragma once

#include <stdexcept>
#include <string>

namespace qfe {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad length, bad range, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A 2x2 matrix handed to the library is not unitary.
class NotUnitary : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A deterministic measurement found the state in superposition. Raised by
/// decryption when the key or angle does not match the ciphertext.
class AmbiguousState : public Error {
 public:
  using Error::Error;
};

/// Setup could not find a secret whose implied images stay in range.
class ResampleExhausted : public Error {
 public:
  using Error::Error;
};

/// KeyGen was called with the length-revealing key.
class AlephKey : public Error {
 public:
  using Error::Error;
};

/// An adversary issued a query that violates the game's validity rule.
/// `query()` names the offending query.
class InvalidAdversary : public Error {
 public:
  InvalidAdversary(const std::string& what, std::string query)
      : Error(what + ": " + query), query_(std::move(query)) {}

  const std::string& query() const noexcept { return query_; }

 private:
  std::string query_;
};

/// An adversary exceeded its oracle query budget.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace qfe
