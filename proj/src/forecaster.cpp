#include "ssi/forecaster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ssi {

namespace {

// Above ~708, e^{-eta} is no longer representable and a single update could
// zero out every weight.
constexpr double kMaxEta = 708.0;
constexpr double kRenormalizeThreshold = 1e-250;

void check_loss_range(double loss) {
  if (!(loss >= 0.0 && loss <= 1.0)) {
    throw std::invalid_argument("per-step loss outside [0,1]");
  }
}

void check_eta(double eta) {
  if (!(eta > 0.0)) {
    throw std::invalid_argument("learning factor must be positive");
  }
  if (eta > kMaxEta) {
    throw std::invalid_argument("learning factor too large for double precision (max 708)");
  }
}

double min_of(std::span<const double> xs) {
  double m = std::numeric_limits<double>::infinity();
  for (double x : xs) m = std::min(m, x);
  return m;
}

}  // namespace

double optimal_eta(std::size_t num_experts, std::size_t horizon) {
  if (num_experts == 0 || horizon == 0) {
    throw std::invalid_argument("optimal_eta requires N >= 1 and n >= 1");
  }
  return std::sqrt(8.0 * std::log(static_cast<double>(num_experts) + 1.0) /
                   static_cast<double>(horizon));
}

ForecasterState::ForecasterState(std::size_t num_experts, double eta)
    : weights_(num_experts + 1, 1.0), eta_(eta) {
  if (num_experts == 0) {
    throw std::invalid_argument("forecaster needs at least one expert");
  }
  check_eta(eta);
}

ForecasterState::ForecasterState(std::vector<double> expert_weights, double ssi_weight, double eta)
    : weights_(std::move(expert_weights)), eta_(eta) {
  weights_.push_back(ssi_weight);
  if (weights_.size() < 2) {
    throw std::invalid_argument("forecaster needs at least one expert");
  }
  for (double w : weights_) {
    if (!(w > 0.0)) {
      throw std::invalid_argument("weights must be positive");
    }
  }
  check_eta(eta);
}

Prediction ForecasterState::predict_step(double ssi_prediction,
                                         std::span<const double> expert_predictions) const {
  if (expert_predictions.size() != num_experts()) {
    throw std::invalid_argument("predict_step: advice count does not match expert count");
  }
  if (!(ssi_prediction >= 0.0 && ssi_prediction <= 1.0)) {
    throw std::invalid_argument("predict_step: SSI advice outside [0,1]");
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < expert_predictions.size(); ++i) {
    if (!(expert_predictions[i] >= 0.0 && expert_predictions[i] <= 1.0)) {
      throw std::invalid_argument("predict_step: expert advice outside [0,1]");
    }
    num += weights_[i] * expert_predictions[i];
    den += weights_[i];
  }
  num += weights_.back() * ssi_prediction;
  den += weights_.back();
  return Prediction(num / den);
}

void ForecasterState::update_step(double ssi_loss, std::span<const double> expert_losses) {
  if (expert_losses.size() != num_experts()) {
    throw std::invalid_argument("update_step: loss count does not match expert count");
  }
  check_loss_range(ssi_loss);
  for (std::size_t i = 0; i < expert_losses.size(); ++i) {
    check_loss_range(expert_losses[i]);
    weights_[i] *= std::exp(-eta_ * expert_losses[i]);
  }
  weights_.back() *= std::exp(-eta_ * ssi_loss);
  ++t_;
}

void ForecasterState::renormalize_if_small() {
  double max_weight = 0.0;
  for (double w : weights_) max_weight = std::max(max_weight, w);
  if (max_weight >= kRenormalizeThreshold || max_weight <= 0.0) return;
  for (double& w : weights_) w /= max_weight;
}

Trajectory run(const ChannelSpec& channel, const ExpertClass& experts,
               const TargetSequence& target, std::optional<double> eta, std::mt19937_64& rng) {
  SideSequence side;
  side.reserve(target.size());
  for (std::size_t t = 0; t < target.size(); ++t) {
    side.push_back(channel.sample(target[t], rng));
  }
  return run_with_side(channel, experts, target, side, eta);
}

Trajectory run_with_side(const ChannelSpec& channel, const ExpertClass& experts,
                         const TargetSequence& target, const SideSequence& side,
                         std::optional<double> eta) {
  const std::size_t n = target.size();
  if (side.size() != n) {
    throw std::invalid_argument("side sequence length does not match target length");
  }
  if (experts.horizon() && *experts.horizon() != n) {
    throw std::invalid_argument("expert horizon does not match target length");
  }
  const std::size_t N = experts.num_experts();
  const double eta_value = eta ? *eta : optimal_eta(N, n);

  ForecasterState state(N, eta_value);
  Trajectory traj;
  traj.predictions.reserve(n);
  traj.expert_losses.assign(N, 0.0);
  double ssi_total = 0.0;

  std::vector<double> advice(N);
  std::vector<double> losses(N);
  for (std::size_t t = 0; t < n; ++t) {
    const double ssi_advice = channel.ml_estimate(side[t]).value();
    for (std::size_t theta = 0; theta < N; ++theta) {
      advice[theta] = experts.predict(theta, t, target.instances().subspan(0, t)).value();
    }
    const double prediction = state.predict_step(ssi_advice, advice).value();
    traj.predictions.push_back(prediction);

    const Outcome x = target[t];
    traj.forecaster_loss += absolute_loss(prediction, x);
    const double ssi_step_loss = absolute_loss(ssi_advice, x);
    ssi_total += ssi_step_loss;
    for (std::size_t theta = 0; theta < N; ++theta) {
      losses[theta] = absolute_loss(advice[theta], x);
      traj.expert_losses[theta] += losses[theta];
    }
    state.update_step(ssi_step_loss, losses);
    state.renormalize_if_small();
  }
  traj.ssi_loss = ssi_total;
  traj.regret = traj.forecaster_loss - min_of(traj.expert_losses);
  return traj;
}

Trajectory run_plain_ewa(const ExpertClass& experts, const TargetSequence& target,
                         std::optional<double> eta) {
  const std::size_t n = target.size();
  if (experts.horizon() && *experts.horizon() != n) {
    throw std::invalid_argument("expert horizon does not match target length");
  }
  const std::size_t N = experts.num_experts();
  const double eta_value =
      eta ? *eta : std::sqrt(8.0 * std::log(static_cast<double>(N)) / static_cast<double>(n));
  if (eta_value < 0.0 || eta_value > kMaxEta) {
    throw std::invalid_argument("learning factor out of range [0, 708]");
  }

  std::vector<double> weights(N, 1.0);
  Trajectory traj;
  traj.predictions.reserve(n);
  traj.expert_losses.assign(N, 0.0);

  std::vector<double> advice(N);
  for (std::size_t t = 0; t < n; ++t) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t theta = 0; theta < N; ++theta) {
      advice[theta] = experts.predict(theta, t, target.instances().subspan(0, t)).value();
      num += weights[theta] * advice[theta];
      den += weights[theta];
    }
    const double prediction = num / den;
    traj.predictions.push_back(prediction);

    const Outcome x = target[t];
    traj.forecaster_loss += absolute_loss(prediction, x);
    double max_weight = 0.0;
    for (std::size_t theta = 0; theta < N; ++theta) {
      const double loss = absolute_loss(advice[theta], x);
      traj.expert_losses[theta] += loss;
      weights[theta] *= std::exp(-eta_value * loss);
      max_weight = std::max(max_weight, weights[theta]);
    }
    if (max_weight < kRenormalizeThreshold && max_weight > 0.0) {
      for (double& w : weights) w /= max_weight;
    }
  }
  traj.regret = traj.forecaster_loss - min_of(traj.expert_losses);
  return traj;
}

}  // namespace ssi
