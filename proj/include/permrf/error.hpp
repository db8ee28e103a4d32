#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace permrf {

enum class Errc {
  not_prime,
  degree_zero,
  size_budget_exceeded,
  not_irreducible,
  level_mismatch,
  tower_mismatch,
  division_by_zero,
  non_divisor_degrees,
  not_in_subfield,
  out_of_range,
  not_a_basis,
  b_in_base_field,
  b_zero,
  c_zero,
  not_bijective,
  unsupported_degree,
  bad_alpha,
  even_characteristic,
  wrong_degree,
  not_over_base_field,
  degree_too_small,
  usage,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace permrf
