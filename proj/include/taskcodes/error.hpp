#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace taskcodes {

enum class Errc {
  invalid_alpha,
  invalid_rho,
  invalid_pmf,
  invalid_argument,
  cap_exceeded,
  m_too_small,
  rate_too_small_for_n,
  alphabet_mismatch,
  alphabet_too_large,
  ground_set_mismatch,
  support_violation,
  parse_error,
};

std::string_view errc_name(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// CLI can map it to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace taskcodes
