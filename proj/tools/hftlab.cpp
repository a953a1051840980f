#include <iostream>
#include <string>
#include <vector>

#include "hftlab/cli.hpp"

int main(int argc, char** argv) {
  const hftlab::cli::CommandResult r = hftlab::cli::run_args({argv + 1, argv + argc});
  if (!r.error.empty()) std::cerr << r.error << '\n';
  if (!r.written_to_file) std::cout << r.payload;
  return r.exit_code;
}
