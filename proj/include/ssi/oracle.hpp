#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>

#include "ssi/channel.hpp"
#include "ssi/core.hpp"
#include "ssi/experts.hpp"

// Independent exact computations: exhaustive enumeration of the expected and
// minimax regret for small horizons, a greedy adversary for large ones, and
// a quadrature/posterior-sum evaluator for xi*.
namespace ssi {

inline constexpr std::size_t kExactRegretDefaultCap = 14;
inline constexpr std::size_t kMinimaxDefaultCap = 10;

struct ExactRegretResult {
  double expected_regret;
  TargetSequence worst_target;
  std::uint64_t enumerated_paths;  // (target, side) pairs considered
};

// Exact expectation over all side sequences of (forecaster loss - best
// expert loss) for one fixed target. Finite side alphabets only; cost grows
// as |alphabet|^n. Raising max_n beyond the default cap prints a warning.
double exact_expected_regret(const ChannelSpec& channel, const ExpertClass& experts,
                             const TargetSequence& target, std::optional<double> eta,
                             std::size_t max_n = kExactRegretDefaultCap);

// Maximum of exact_expected_regret over all 2^n binary targets.
ExactRegretResult minimax_regret_bruteforce(const ChannelSpec& channel,
                                            const ExpertClass& experts, std::size_t n,
                                            std::optional<double> eta,
                                            std::size_t max_n = kMinimaxDefaultCap);

// One-step-lookahead adversary: picks each outcome to maximize the expected
// instantaneous excess of the forecaster over the best expert, given the
// current weights; ties go to 1. Side realizations are sampled as the
// sequence is built. Not necessarily worst case.
TargetSequence greedy_adversary(const ChannelSpec& channel, const ExpertClass& experts,
                                std::size_t n, std::optional<double> eta, std::mt19937_64& rng);

// xi* evaluated without the closed forms: posterior sums for finite
// alphabets, adaptive quadrature (absolute error <= 1e-9) for the Gaussian
// channel.
double xi_star_oracle(const ChannelSpec& channel);

}  // namespace ssi
