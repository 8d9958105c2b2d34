#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace csreg {

// Everything the command line can set, with the per-subcommand defaults
// already applied. dispatch() validates the combination before any
// computation runs and writes the artifact plus a manifest echoing the
// resolved config.
struct RunConfig {
  std::string subcommand;
  std::string kind = "sym-binary";  // recover / sparse instance family
  std::string reg = "bin";          // method selector: a penalty or a baseline
  std::string demo;                 // maxcut built-in graph name
  std::string graph_path;           // maxcut Gset file
  std::string input_path;           // quantize vector file
  std::string mode = "ternary";     // quantize binary | ternary
  std::string out;                  // artifact path

  std::vector<int> m_list;  // measurement sweep (single entry where fixed)
  std::vector<int> k_list;  // sparse nonzero-count sweep
  int n = 100;
  int k = 10;  // orthogonal column count
  int bits = 2;
  int trials = 100;
  int restarts = 0;  // 0 keeps the per-kind default
  int max_iter = 10000;
  int jobs = 1;
  int resolution = 101;  // landscape grid side
  int points = 100;      // gradcheck sample count
  std::uint64_t seed = 1729;
  double lambda = 1e-5;
  double beta = 1.0;  // bin-beta-fixed level
  double tol = 1e-10;
  double lo = -2.0;
  double hi = 2.0;
  bool paper_scale = false;
  bool baseline = false;  // eigvec: run the joint (x, mu) least-squares instead

  std::uint64_t resolved_seed() const { return seed; }
};

// "lo:step:hi" (inclusive, step > 0), "a,b,c", or a single integer.
std::vector<int> parse_sweep(const std::string& text);

// Whitespace- or comma-separated reals.
std::vector<double> read_vector_file(const std::string& path);

// Runs one subcommand end to end. Returns 0 on success, 1 when a solver
// aborts or a gradient check fails. Config problems throw
// std::invalid_argument; the argv wrapper turns those into exit code 2.
int dispatch(const RunConfig& cfg);

// argv-style entry point (tokens exclude the program name): parses flags,
// fills RunConfig, and maps errors to the documented exit codes
// (0 ok / 1 solver abort / 2 bad config).
int run_cli(const std::vector<std::string>& args);

}  // namespace csreg
