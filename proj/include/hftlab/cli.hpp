#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hftlab/catalog.hpp"

namespace hftlab::cli {

enum class Output { json, csv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// Environment variable holding the default tolerance.
inline constexpr const char* kTolEnv = "HFTLAB_TOL";

struct CommandRequest {
  std::string subcommand;
  std::string function;
  std::optional<double> alpha;
  int nmax = 40;
  int n = 0;
  std::optional<int> n_lo;
  std::optional<int> n_hi;
  std::string z = "0";
  std::string method = "auto";
  std::string source = "taylor";
  std::optional<double> sigma;
  double r = 0.0;
  double N = 10.0;
  std::optional<int> M;
  int j = 1;
  std::string kind = "phi";
  int budget = 30;
  std::vector<double> alphas;
  int levels = 3;
  std::optional<double> tol;
  Output output = Output::json;
  std::optional<std::string> out_path;
  std::string ledger_path = "provenance_ledger.txt";
  bool timestamp = true;
};

struct CommandResult {
  int exit_code = kExitOk;
  /// Serialized payload (empty on error).
  std::string payload;
  /// Single-line JSON error record (empty on success).
  std::string error;
  /// The payload was also written to request.out_path.
  bool written_to_file = false;
};

/// Runs a validated request. Never throws: errors become exit codes.
CommandResult run(const CommandRequest& request);

/// Parses argv (without the program name) into a request and runs it.
/// --help output is returned as the payload with exit code 0.
CommandResult run_args(const std::vector<std::string>& args);

}  // namespace hftlab::cli
