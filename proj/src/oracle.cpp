#include "ssi/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ssi/forecaster.hpp"

namespace ssi {

namespace {

void check_cap(std::size_t n, std::size_t max_n, std::size_t default_cap, const char* what) {
  if (n == 0) {
    throw std::invalid_argument(std::string(what) + ": n must be >= 1");
  }
  if (max_n > default_cap) {
    std::fprintf(stderr,
                 "warning: %s cap raised to n=%zu (default %zu); runtime grows exponentially\n",
                 what, max_n, default_cap);
  }
  if (n > max_n) {
    throw std::invalid_argument(std::string(what) + ": n=" + std::to_string(n) +
                                " exceeds the enumeration cap " + std::to_string(max_n));
  }
}

// Per-target tables reused across all side sequences.
struct EnumerationTables {
  std::size_t n = 0;
  std::size_t num_experts = 0;
  std::size_t alphabet_size = 0;
  double eta = 0.0;
  double best_expert_loss = 0.0;
  std::vector<double> ml_by_symbol;      // ML advice per side symbol
  std::vector<double> step_prob;         // [t * A + j] = P(symbol j | target_t)
  std::vector<double> ssi_step_loss;     // [t * A + j] = |ml(symbol j) - target_t|
  std::vector<double> expert_advice;     // [t * N + theta]
  std::vector<double> expert_step_loss;  // [t * N + theta]
};

EnumerationTables build_tables(const ChannelSpec& channel, const ExpertClass& experts,
                               const TargetSequence& target, std::optional<double> eta) {
  EnumerationTables tb;
  tb.n = target.size();
  tb.num_experts = experts.num_experts();
  tb.eta = eta ? *eta : optimal_eta(tb.num_experts, tb.n);

  const auto dist0 = channel.side_distribution(Outcome(0));
  const auto dist1 = channel.side_distribution(Outcome(1));
  tb.alphabet_size = dist0.size();
  tb.ml_by_symbol.reserve(tb.alphabet_size);
  for (const auto& [symbol, prob] : dist0) {
    (void)prob;
    tb.ml_by_symbol.push_back(channel.ml_estimate(symbol).value());
  }

  tb.step_prob.resize(tb.n * tb.alphabet_size);
  tb.ssi_step_loss.resize(tb.n * tb.alphabet_size);
  tb.expert_advice.resize(tb.n * tb.num_experts);
  tb.expert_step_loss.resize(tb.n * tb.num_experts);
  for (std::size_t t = 0; t < tb.n; ++t) {
    const Outcome x = target[t];
    const auto& dist = x.value() == 0 ? dist0 : dist1;
    for (std::size_t j = 0; j < tb.alphabet_size; ++j) {
      tb.step_prob[t * tb.alphabet_size + j] = dist[j].second;
      tb.ssi_step_loss[t * tb.alphabet_size + j] = std::abs(tb.ml_by_symbol[j] - x.real());
    }
    for (std::size_t theta = 0; theta < tb.num_experts; ++theta) {
      const double advice =
          experts.predict(theta, t, target.instances().subspan(0, t)).value();
      tb.expert_advice[t * tb.num_experts + theta] = advice;
      tb.expert_step_loss[t * tb.num_experts + theta] = std::abs(advice - x.real());
    }
  }
  tb.best_expert_loss = experts.best_expert_cumulative_loss(target);
  return tb;
}

// Forecaster cumulative loss along one side-sequence realization, identified
// by per-step symbol indices.
double forecaster_loss_on_path(const EnumerationTables& tb, const std::vector<std::size_t>& idx,
                               const TargetSequence& target) {
  ForecasterState state(tb.num_experts, tb.eta);
  double loss = 0.0;
  for (std::size_t t = 0; t < tb.n; ++t) {
    const std::span<const double> advice(&tb.expert_advice[t * tb.num_experts], tb.num_experts);
    const double p = state.predict_step(tb.ml_by_symbol[idx[t]], advice).value();
    loss += std::abs(p - target[t].real());
    const std::span<const double> losses(&tb.expert_step_loss[t * tb.num_experts],
                                         tb.num_experts);
    state.update_step(tb.ssi_step_loss[t * tb.alphabet_size + idx[t]], losses);
    state.renormalize_if_small();
  }
  return loss;
}

double exact_expected_regret_prepared(const ChannelSpec& channel, const ExpertClass& experts,
                                      const TargetSequence& target, std::optional<double> eta,
                                      std::uint64_t* paths_out) {
  const EnumerationTables tb = build_tables(channel, experts, target, eta);
  std::vector<std::size_t> idx(tb.n, 0);
  double expectation = 0.0;
  double prob_sum = 0.0;
  std::uint64_t paths = 0;
  bool done = false;
  while (!done) {
    ++paths;
    double prob = 1.0;
    for (std::size_t t = 0; t < tb.n; ++t) {
      prob *= tb.step_prob[t * tb.alphabet_size + idx[t]];
    }
    prob_sum += prob;
    if (prob > 0.0) {
      expectation += prob * (forecaster_loss_on_path(tb, idx, target) - tb.best_expert_loss);
    }
    // odometer over the side alphabet
    std::size_t t = 0;
    for (; t < tb.n; ++t) {
      if (++idx[t] < tb.alphabet_size) break;
      idx[t] = 0;
    }
    done = (t == tb.n);
  }
  if (std::abs(prob_sum - 1.0) > 1e-10) {
    throw std::logic_error("side-sequence probabilities do not sum to 1");
  }
  if (paths_out) *paths_out = paths;
  return expectation;
}

}  // namespace

double exact_expected_regret(const ChannelSpec& channel, const ExpertClass& experts,
                             const TargetSequence& target, std::optional<double> eta,
                             std::size_t max_n) {
  if (!channel.has_finite_side_alphabet()) {
    throw std::invalid_argument(
        "exact_expected_regret: Gaussian side alphabet is uncountable; use Monte Carlo");
  }
  check_cap(target.size(), max_n, kExactRegretDefaultCap, "exact_expected_regret");
  return exact_expected_regret_prepared(channel, experts, target, eta, nullptr);
}

ExactRegretResult minimax_regret_bruteforce(const ChannelSpec& channel,
                                            const ExpertClass& experts, std::size_t n,
                                            std::optional<double> eta, std::size_t max_n) {
  if (!channel.has_finite_side_alphabet()) {
    throw std::invalid_argument(
        "minimax_regret_bruteforce: Gaussian side alphabet is uncountable; use Monte Carlo");
  }
  check_cap(n, max_n, kMinimaxDefaultCap, "minimax_regret_bruteforce");
  if (n > 63) {
    throw std::invalid_argument("minimax_regret_bruteforce: n too large to enumerate");
  }

  ExactRegretResult result{-std::numeric_limits<double>::infinity(), TargetSequence::zeros(n), 0};
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    const TargetSequence target = TargetSequence::from_bits(bits, n);
    std::uint64_t paths = 0;
    const double regret = exact_expected_regret_prepared(channel, experts, target, eta, &paths);
    result.enumerated_paths += paths;
    if (regret > result.expected_regret) {
      result.expected_regret = regret;
      result.worst_target = target;
    }
  }
  return result;
}

TargetSequence greedy_adversary(const ChannelSpec& channel, const ExpertClass& experts,
                                std::size_t n, std::optional<double> eta, std::mt19937_64& rng) {
  if (n == 0) {
    throw std::invalid_argument("greedy_adversary: n must be >= 1");
  }
  const std::size_t N = experts.num_experts();
  const double eta_value = eta ? *eta : optimal_eta(N, n);

  ForecasterState state(N, eta_value);
  std::vector<Outcome> history;
  history.reserve(n);
  std::vector<double> advice(N);
  std::vector<double> losses(N);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t theta = 0; theta < N; ++theta) {
      advice[theta] = experts.predict(theta, t, history).value();
    }
    // expected instantaneous excess of the forecaster over the best expert,
    // for each candidate outcome
    double score[2];
    for (int candidate = 0; candidate < 2; ++candidate) {
      const Outcome x(candidate);
      double expected_forecaster = 0.0;
      for (const auto& [ml_advice, prob] : channel.ml_advice_distribution(x)) {
        expected_forecaster += prob * std::abs(state.predict_step(ml_advice, advice).value() - x.real());
      }
      double best_expert = 1.0;
      for (double a : advice) best_expert = std::min(best_expert, std::abs(a - x.real()));
      score[candidate] = expected_forecaster - best_expert;
    }
    const Outcome chosen(score[1] >= score[0] ? 1 : 0);
    history.push_back(chosen);

    const double side = channel.sample(chosen, rng);
    const double ssi_loss = std::abs(channel.ml_estimate(side).value() - chosen.real());
    for (std::size_t theta = 0; theta < N; ++theta) {
      losses[theta] = std::abs(advice[theta] - chosen.real());
    }
    state.update_step(ssi_loss, losses);
    state.renormalize_if_small();
  }
  return TargetSequence(std::move(history));
}

namespace {

// Adaptive Simpson with the standard |S2 - S1|/15 error estimate.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double err = left + right - whole;
  if (depth <= 0 || std::abs(err) <= 15.0 * tol) {
    return left + right + err / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double xi_star_oracle(const ChannelSpec& channel) {
  if (const auto* g = std::get_if<AdditiveGaussian>(&channel.spec())) {
    // Expected loss of the posterior-majority predictor under the uniform
    // prior: integral of (1/2) min(p(s|0), p(s|1)). The two branches meet at
    // s = 1/2, so integrate each side separately.
    const auto integrand = std::function<double(double)>([&](double s) {
      return 0.5 * std::min(channel.likelihood(s, Outcome(0)), channel.likelihood(s, Outcome(1)));
    });
    const double width = 40.0 * g->sigma;
    return integrate(integrand, 0.5 - width, 0.5, 2.5e-10) +
           integrate(integrand, 0.5, 0.5 + width, 2.5e-10);
  }
  const auto dist0 = channel.side_distribution(Outcome(0));
  const auto dist1 = channel.side_distribution(Outcome(1));
  double total = 0.0;
  for (std::size_t j = 0; j < dist0.size(); ++j) {
    const double p_s = 0.5 * dist0[j].second + 0.5 * dist1[j].second;
    if (p_s == 0.0) continue;
    const double posterior_one = 0.5 * dist1[j].second / p_s;
    total += p_s * std::min(posterior_one, 1.0 - posterior_one);
  }
  return total;
}

}  // namespace ssi
