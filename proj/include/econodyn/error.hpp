#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace econodyn {

enum class Errc {
  invalid_argument,
  singular_matrix,
  no_convergence,
  degenerate_step,
  characteristic_lambda,
  horizon_exceeded,
  undefined_horizon,
  invalid_parameters,
  not_contractive,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::singular_matrix: return "singular-matrix";
    case Errc::no_convergence: return "no-convergence";
    case Errc::degenerate_step: return "degenerate-step";
    case Errc::characteristic_lambda: return "characteristic-lambda";
    case Errc::horizon_exceeded: return "horizon-exceeded";
    case Errc::undefined_horizon: return "undefined-horizon";
    case Errc::invalid_parameters: return "invalid-parameters";
    case Errc::not_contractive: return "not-contractive";
  }
  return "unknown";
}

// Library failures; what() reads "<code>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace econodyn
