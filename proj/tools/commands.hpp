#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "digitseq/digital_function.hpp"

namespace digitseq::cli {

/// Options shared by every subcommand that reads a digital function.
struct Source {
  std::string preset;
  std::string spec_file;
  std::string map = "square";
  std::string out;
  std::uint64_t seed = 1;
  int threads = 1;

  DigitalFunction function() const;
};

/// A check ran and its assertion failed; maps to exit code 1.
struct CheckFailed {
  std::string what;
};

struct GenerateArgs {
  std::string start = "0";
  std::uint64_t count = 64;
  std::string format = "raw";
};

struct StatsArgs {
  std::uint64_t N = 1000000;
  int k = 4;
  int complexity = 0;
  std::optional<double> tolerance;
  std::string report = "json";
};

struct ExpsumArgs {
  std::string alpha;
  std::string grid = "1024,4096,16384,65536";
  std::string report = "csv";
};

struct FourierArgs {
  std::string alpha;
  int lambda = 6;
  std::string check = "parseval";
  int samples = 64;
  std::string index;
  std::int64_t h = 0;
  std::int64_t d = 0;
  double limit = 64.0;
};

struct ToolboxArgs {
  std::int64_t a = 1, b = 0, m = 4;
  std::optional<std::int64_t> n0, N;
  double alpha = 0.25;
  int H = 8;
  int grid = 4096;
  int length = 256;
  std::int64_t Q = 1, R = 1;
  int nu = 10, lambda = 14, rho = 2, mu = 0, rho_prime = 0;
  std::int64_t r = 3, ell = 1, s = 1;
  double shift = 0.0, U = 1e6;
  std::int64_t A = 1;
};

struct BenchArgs {
  std::uint64_t count = 1000000;
  bool timing = false;
};

/// Each writes its report to `out` and returns normally on success; failed
/// checks throw CheckFailed after the report is written.
void run_generate(const Source& src, const GenerateArgs& a, std::ostream& out);
void run_stats(const Source& src, const StatsArgs& a, std::ostream& out);
void run_expsum(const Source& src, const ExpsumArgs& a, std::ostream& out);
void run_fourier(const Source& src, const FourierArgs& a, std::ostream& out);
void run_toolbox(const std::string& tool, const Source& src, const ToolboxArgs& a,
                 std::ostream& out);
void run_bench(const Source& src, const BenchArgs& a, std::ostream& out);

}  // namespace digitseq::cli
