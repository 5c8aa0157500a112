#pragma once

#include <stdexcept>
#include <string>

namespace kahler {

enum class Errc {
  degree_overflow,
  variable_mismatch,
  validity_exhausted,
  zero_constant_term,
  nonzero_constant_term,
  non_square,
  singular,
  insufficient_order,
  gauge_violation,
  not_einstein,
  rank_too_low,
  invalid_argument,
  parse_error,
  unknown_space,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace kahler
