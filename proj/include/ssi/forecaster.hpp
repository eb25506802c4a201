#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "ssi/channel.hpp"
#include "ssi/core.hpp"
#include "ssi/experts.hpp"

// The exponentially weighted forecaster over N experts plus the ML
// pseudo-expert fed by the side-information channel, and the plain EWA
// baseline without side information.
namespace ssi {

// Learning factor sqrt(8 ln(N+1) / n) for N experts plus the SSI adviser
// over horizon n.
double optimal_eta(std::size_t num_experts, std::size_t horizon);

// Mutable weight state of one run. Weights start at 1 and only decay.
class ForecasterState {
 public:
  ForecasterState(std::size_t num_experts, double eta);
  // Non-initial state; all weights must be positive.
  ForecasterState(std::vector<double> expert_weights, double ssi_weight, double eta);

  double w_ssi() const { return weights_.back(); }
  std::span<const double> w_experts() const {
    return std::span<const double>(weights_).first(weights_.size() - 1);
  }
  double eta() const { return eta_; }
  std::size_t step() const { return t_; }
  std::size_t num_experts() const { return weights_.size() - 1; }

  // Weight-normalized mixture of the experts' advice and the SSI advice.
  Prediction predict_step(double ssi_prediction, std::span<const double> expert_predictions) const;

  // Multiplies each weight by e^{-eta * loss} and advances the step counter.
  void update_step(double ssi_loss, std::span<const double> expert_losses);

  // Rescales all weights by 1/max once the largest weight decays below
  // 1e-250. A common factor cancels in predict_step, so predictions are
  // unaffected; this keeps very long horizons and large eta away from
  // floating-point underflow.
  void renormalize_if_small();

 private:
  std::vector<double> weights_;  // experts first, SSI adviser last
  double eta_;
  std::size_t t_ = 0;
};

struct Trajectory {
  std::vector<double> predictions;
  double forecaster_loss = 0.0;
  std::optional<double> ssi_loss;    // absent for the plain EWA baseline
  std::vector<double> expert_losses;
  double regret = 0.0;               // forecaster_loss - min expert loss
};

// Full protocol with the side sequence drawn from the channel step by step.
Trajectory run(const ChannelSpec& channel, const ExpertClass& experts,
               const TargetSequence& target, std::optional<double> eta, std::mt19937_64& rng);

// Same protocol with a fixed side-sequence realization; deterministic.
Trajectory run_with_side(const ChannelSpec& channel, const ExpertClass& experts,
                         const TargetSequence& target, const SideSequence& side,
                         std::optional<double> eta);

// Classical exponentially weighted average over the experts alone; auto eta
// is sqrt(8 ln(N) / n).
Trajectory run_plain_ewa(const ExpertClass& experts, const TargetSequence& target,
                         std::optional<double> eta);

}  // namespace ssi
