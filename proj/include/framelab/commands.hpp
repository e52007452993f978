#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "framelab/types.hpp"

namespace framelab::cli {

/// Exit-code contract: 0 success, 1 verification failure, 2 invalid input,
/// 3 resource guard.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitTooLarge = 3;

int exit_code_for(const Error& error);

struct BuildArgs {
  int n = 0;
  int k = 0;
  std::string kind = "real";
  std::string pattern;  // empty: no systematic generator requested
  std::optional<int> alpha;
};

struct SpectrumArgs {
  int n = 0;
  int k = 0;
  std::string kind = "real";
  std::string pattern;
};

struct SearchArgs {
  int n = 0;
  int k = 0;
  std::string kind = "real";
  std::string mode = "rotation";
  std::string format = "json";
};

struct SimulateArgs {
  int n = 0;
  int k = 0;
  std::string kind = "real";
  std::string pattern;
  std::string noise = "iid";
  double sigma_q2 = 1e-2;
  int bits = 8;
  double range = 8.0;
  double sigma_x2 = 1.0;
  std::int64_t trials = 100000;
  std::uint64_t seed = 0;
};

struct VerifyArgs {
  int n_max = 8;
};

struct VerifyOutput {
  std::string text;
  bool all_passed = false;
};

// Each runner returns the exact bytes the CLI writes to standard output.
std::string run_build(const BuildArgs& args);
std::string run_spectrum(const SpectrumArgs& args);
std::string run_search(const SearchArgs& args);
std::string run_simulate(const SimulateArgs& args);
VerifyOutput run_verify(const VerifyArgs& args);

}  // namespace framelab::cli
