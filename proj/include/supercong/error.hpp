// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace supercong {

enum class errc {
  usage,
  modulus_mismatch,
  not_prime,
  not_invertible,
  denominator_not_coprime,
  not_divisible,
  precision_exhausted,
  invalid_family,
  cache_bound_exceeded,
  irregular_reduction,
  irregular_cache,
  not_applicable,
};

constexpr std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::usage: return "Usage";
    case errc::modulus_mismatch: return "ModulusMismatch";
    case errc::not_prime: return "NotPrime";
    case errc::not_invertible: return "NotInvertible";
    case errc::denominator_not_coprime: return "DenominatorNotCoprime";
    case errc::not_divisible: return "NotDivisible";
    case errc::precision_exhausted: return "PrecisionExhausted";
    case errc::invalid_family: return "InvalidFamily";
    case errc::cache_bound_exceeded: return "CacheBoundExceeded";
    case errc::irregular_reduction: return "IrregularReduction";
    case errc::irregular_cache: return "IrregularCache";
    case errc::not_applicable: return "NotApplicable";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace supercong
