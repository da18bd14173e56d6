#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ahm::cli {

enum class Format { csv, json };

struct RunConfig {
  std::string command;  // dilation-table | radial-solve | energy | verify | sweep
  std::vector<double> alpha;
  std::vector<double> lambda;
  std::vector<int> n;
  std::vector<int> cells;
  int grid_nodes = 256;
  std::string map = "identity";
  std::string mobius;        // "a,b,c,d" with complex entries such as 1, -2.5, 0.3+1i, i
  std::string profile_in;    // two-column (r, f) file for --map radial
  std::string method = "newton";
  int max_iters = 200000;
  double grad_tol = 1e-8;
  double residual_tol = 1e-4;
  std::vector<double> continuation;
  std::uint64_t seed = 20240917;
  std::vector<int> criteria;
  Format format = Format::csv;
  std::string output;       // report file; empty means stdout unless output_dir is set
  std::string output_dir;   // default directory for reports and profiles
  std::string profile_out;  // profile file of radial-solve
  int threads = 0;          // sweep workers; 0 picks the hardware concurrency
};

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfigError = 2;

/// Executes one configured run, writing the report to `out` (or to the
/// configured file) and diagnostics to `err`. Returns the exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses flags and an optional key = value config file (flags take
/// precedence), then runs.
int main(int argc, char** argv);

}  // namespace ahm::cli
