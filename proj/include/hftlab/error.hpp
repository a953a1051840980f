#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hftlab/log_complex.hpp"

namespace hftlab {

enum class ErrorKind {
  domain,
  precondition,
  parse,
  not_ck,
  invalid_contour,
  budget_exhausted,
  divergent_tail,
  precision_loss,
  cut_proximity,
  verification_failed,
  analyticity_suspect,
};

std::string_view to_string(ErrorKind kind);

/// Raised by every numerical and validation failure in the library. Numerical
/// failures may carry the best estimate reached before giving up.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<LogComplex> best_estimate = std::nullopt)
      : std::runtime_error(message), kind_(kind), best_(best_estimate) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<LogComplex>& best_estimate() const noexcept { return best_; }

  /// Validation-type errors (bad input) as opposed to numerical failures.
  bool is_validation() const noexcept {
    return kind_ == ErrorKind::domain || kind_ == ErrorKind::precondition ||
           kind_ == ErrorKind::parse || kind_ == ErrorKind::not_ck ||
           kind_ == ErrorKind::cut_proximity || kind_ == ErrorKind::invalid_contour;
  }

 private:
  ErrorKind kind_;
  std::optional<LogComplex> best_;
};

}  // namespace hftlab
