#pragma once

// The acceptance criteria as runnable checks, shared by the `selfcheck`
// subcommand and the acceptance test binary. Seeds, sample counts and time
// limits are fixed here.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace k3iso {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;
};

inline constexpr std::uint64_t kSelfcheckSeed = 20240611;
inline constexpr int kMoveTrials = 1000;

inline constexpr double kLimitWorkedExample = 1.0;
inline constexpr double kLimitMoveInvariance = 10.0;
inline constexpr double kLimitPeriodSweep = 120.0;
inline constexpr double kLimitEquivalenceSweep = 120.0;
inline constexpr double kLimitPellOracle = 60.0;
inline constexpr double kLimitNegativeControls = 10.0;

CriterionResult check_worked_example();
CriterionResult check_move_invariance(std::uint64_t seed = kSelfcheckSeed,
                                      int trials = kMoveTrials);
CriterionResult check_period_sweep(unsigned threads = 0);
CriterionResult check_equivalence_sweep(unsigned threads = 0);
CriterionResult check_pell_oracle();
CriterionResult check_negative_controls();

// All six in order; `on_result` sees each as soon as it finishes.
std::vector<CriterionResult> run_selfcheck(
    unsigned threads = 0, const std::function<void(const CriterionResult&)>& on_result = {});

std::string format_result(const CriterionResult& result);

}  // namespace k3iso
