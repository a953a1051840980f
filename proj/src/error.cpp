#include "hftlab/error.hpp"

namespace hftlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::parse: return "parse";
    case ErrorKind::not_ck: return "not_ck";
    case ErrorKind::invalid_contour: return "invalid_contour";
    case ErrorKind::budget_exhausted: return "budget_exhausted";
    case ErrorKind::divergent_tail: return "divergent_tail";
    case ErrorKind::precision_loss: return "precision_loss";
    case ErrorKind::cut_proximity: return "cut_proximity";
    case ErrorKind::verification_failed: return "verification_failed";
    case ErrorKind::analyticity_suspect: return "analyticity_suspect";
  }
  return "unknown";
}

}  // namespace hftlab
