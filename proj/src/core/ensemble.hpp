// Seeded random-ensemble experiment driver: degree-growth convergence,
// duality, integrality, the homogenization cross-check and arithmetic
// degree membership over random matrix pairs, plus the per-correspondence
// consistency battery behind the `check` subcommand.
#pragma once

#include <string>
#include <vector>

#include "degrees.hpp"
#include "heights.hpp"

namespace monodyn {

struct EnsembleConfig {
  int dim = 2;
  int count = 50;
  long bound = 3;
  unsigned long long seed = 1;
  unsigned p_max = 10;
  unsigned orbit_p_max = 25;
  unsigned bits = 128;
};

struct CheckOutcome {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SampleResult {
  int index = 0;
  std::string m_text, n_text;
  std::vector<CheckOutcome> checks;
  std::vector<std::string> findings;  // logged observations, not failures

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

struct EnsembleReport {
  EnsembleConfig config;
  std::vector<SampleResult> samples;
  int failed = 0;
  bool all_pass = true;
};

EnsembleReport run_ensemble(const EnsembleConfig& config);

struct CheckReport {
  std::vector<CheckOutcome> checks;
  bool all_pass = true;
};

// Consistency battery for one correspondence: duality, integrality, the
// deg_1 oracle, spectral endpoints, log-concavity verdicts, and (when a
// point is supplied and the cycle budget allows) the fast/brute-force
// orbit-height identity.
CheckReport run_check(const MonomialCorrespondence& f, const std::vector<Rat>* point,
                      unsigned p_max, unsigned bits);

// Deterministic matrix sampling shared by the ensemble and the tests:
// entries uniform in [-bound, bound] from a splitmix-style stream,
// resampled until nonsingular.
class MatrixSampler {
 public:
  explicit MatrixSampler(unsigned long long seed) : state_(seed) {}

  IntMatrix nonsingular(int dim, long bound);
  IntMatrix any(int dim, long bound);

 private:
  unsigned long long next();
  unsigned long long state_;
};

}  // namespace monodyn
