#pragma once

// Named batteries of transformation-law checks at seeded random points.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "maass/numeric.hpp"

namespace maass {

inline constexpr std::uint64_t kDefaultSeed = 0x4B57;

struct SuiteParams {
  std::uint64_t seed = kDefaultSeed;
  int digits = 30;
  double tolerance = 1e-8;
  int points = 20;
  long m = 4;
  long n = 2;
  long ell = 1;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  int points = 0;
  double max_residual = 0;
  double tolerance = 0;
  bool pass = false;
  /// Where the largest residual occurred.
  std::string witness;
  /// Suite-specific details (extracted roots, negative controls, ...).
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const;
};

/// Every runnable suite name, "all" excluded.
const std::vector<std::string>& suite_names();
bool suite_exists(const std::string& name);

/// Runs one named suite. Throws InvalidArgument for an unknown name or
/// parameters outside the suite's domain.
SuiteReport run_suite(const std::string& name, const SuiteParams& params);
/// "all" expands to every suite in suite_names().
std::vector<SuiteReport> run_suites(const std::string& name, const SuiteParams& params);

/// Throws SuiteFailed carrying the residual and witness unless r.pass.
void require_pass(const SuiteReport& r);

/// Random element of Gamma_0(level) as a word in T^{+-1} and (1,0;level,1)^{+-1},
/// entries bounded by max_entry.
ModularMatrix random_gamma0(SampleRng& rng, long level, long max_entry);
/// Random element of SL2(Z) as a word in S and T^{+-1}.
ModularMatrix random_sl2(SampleRng& rng, long max_entry);

/// chi*(gamma) = psi(gamma)^(3(m-n)) (-1)^(mc/4), gamma in Gamma_0(2).
Complex chi_star(long m, long n, const ModularMatrix& g, int digits = 30);

}  // namespace maass
