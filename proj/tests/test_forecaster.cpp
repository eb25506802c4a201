#include "ssi/forecaster.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <stdexcept>

#include "doctest.h"

using namespace ssi;

TEST_CASE("optimal eta") {
  CHECK(optimal_eta(1, 8) == doctest::Approx(0.8325546111576977).epsilon(1e-15));
  CHECK(optimal_eta(2, 100) == doctest::Approx(0.2964607614735022).epsilon(1e-15));
  // sqrt(1/n) scaling: quadrupling the horizon halves eta exactly
  CHECK(optimal_eta(3, 25) == 2.0 * optimal_eta(3, 100));
  CHECK_THROWS_AS(optimal_eta(0, 10), std::invalid_argument);
  CHECK_THROWS_AS(optimal_eta(2, 0), std::invalid_argument);
}

TEST_CASE("predict step") {
  const ForecasterState fresh(2, 1.0);
  const std::vector<double> advice{0.0, 1.0};
  CHECK(fresh.predict_step(0.5, advice).value() == 0.5);

  const ForecasterState heavy_ssi({1.0, 1.0}, 2.0, 1.0);
  const std::vector<double> zeros2{0.0, 0.0};
  CHECK(heavy_ssi.predict_step(1.0, zeros2).value() == 0.5);

  const ForecasterState heavy_expert({3.0}, 1.0, 1.0);
  const std::vector<double> zero1{0.0};
  CHECK(heavy_expert.predict_step(1.0, zero1).value() == 0.25);

  CHECK_THROWS_AS(fresh.predict_step(1.5, advice), std::invalid_argument);
  const std::vector<double> bad{0.0, 1.5};
  CHECK_THROWS_AS(fresh.predict_step(0.5, bad), std::invalid_argument);
  const std::vector<double> wrong_count{0.5};
  CHECK_THROWS_AS(fresh.predict_step(0.5, wrong_count), std::invalid_argument);
  CHECK_THROWS_AS(ForecasterState({1.0, 0.0}, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ForecasterState(2, 0.0), std::invalid_argument);
}

TEST_CASE("update step") {
  ForecasterState state(1, 0.5);
  const std::vector<double> no_loss{0.0};
  state.update_step(0.0, no_loss);
  CHECK(state.w_ssi() == 1.0);
  CHECK(state.w_experts()[0] == 1.0);
  CHECK(state.step() == 1);

  const std::vector<double> full_loss{1.0};
  state.update_step(1.0, full_loss);
  CHECK(state.w_ssi() == doctest::Approx(0.6065306597126334).epsilon(1e-15));
  CHECK(state.w_experts()[0] == doctest::Approx(0.6065306597126334).epsilon(1e-15));
  CHECK(state.step() == 2);

  const std::vector<double> too_big{1.5};
  CHECK_THROWS_AS(state.update_step(0.5, too_big), std::invalid_argument);
  CHECK_THROWS_AS(state.update_step(-0.1, full_loss), std::invalid_argument);
}

TEST_CASE("equal losses leave the mixture unchanged") {
  ForecasterState state({0.8, 0.3}, 0.6, 1.3);
  const std::vector<double> advice{0.2, 0.9};
  const double before = state.predict_step(0.55, advice).value();
  const std::vector<double> equal{0.4, 0.4};
  state.update_step(0.4, equal);
  CHECK(state.predict_step(0.55, advice).value() == doctest::Approx(before).epsilon(1e-14));
}

TEST_CASE("weights stay positive and never increase") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  ForecasterState state(3, 0.7);
  std::vector<double> prev{1.0, 1.0, 1.0};
  double prev_ssi = 1.0;
  for (int t = 0; t < 200; ++t) {
    std::vector<double> losses{unif(rng), unif(rng), unif(rng)};
    state.update_step(unif(rng), losses);
    for (int i = 0; i < 3; ++i) {
      CHECK(state.w_experts()[i] > 0.0);
      CHECK(state.w_experts()[i] <= prev[i]);
      prev[i] = state.w_experts()[i];
    }
    CHECK(state.w_ssi() > 0.0);
    CHECK(state.w_ssi() <= prev_ssi);
    prev_ssi = state.w_ssi();
  }
}

TEST_CASE("single-step run, noiseless channel") {
  auto rng = std::mt19937_64(0);
  const Trajectory traj =
      run(ChannelSpec::binary_symmetric(0.0), ExpertClass::constant({0.5}),
          TargetSequence::ones(1), std::nullopt, rng);
  CHECK(traj.predictions == std::vector<double>{0.75});
  CHECK(traj.forecaster_loss == 0.25);
  CHECK(traj.expert_losses == std::vector<double>{0.5});
  CHECK(*traj.ssi_loss == 0.0);
  CHECK(traj.regret == -0.25);
}

TEST_CASE("single-step run, uninformative channel") {
  auto rng = std::mt19937_64(0);
  const Trajectory traj =
      run(ChannelSpec::binary_symmetric(0.5), ExpertClass::constant({0.5}),
          TargetSequence::zeros(1), std::nullopt, rng);
  CHECK(traj.predictions == std::vector<double>{0.5});
  CHECK(traj.regret == 0.0);
}

TEST_CASE("predictions are convex combinations of the advice") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t n = 30;
    const std::size_t N = 1 + rep % 4;
    std::vector<double> values(N);
    for (double& v : values) v = unif(rng);
    const ExpertClass cls = ExpertClass::constant(values);
    const ChannelSpec ch = ChannelSpec::binary_symmetric(unif(rng));
    std::vector<Outcome> bits;
    for (std::size_t t = 0; t < n; ++t) bits.push_back(Outcome(unif(rng) < 0.5 ? 0 : 1));
    const TargetSequence target{bits};

    SideSequence side;
    for (std::size_t t = 0; t < n; ++t) side.push_back(ch.sample(target[t], rng));
    const Trajectory traj = run_with_side(ch, cls, target, side, std::nullopt);
    CHECK(traj.forecaster_loss == cumulative_loss(traj.predictions, target));
    for (std::size_t t = 0; t < n; ++t) {
      double lo = ch.ml_estimate(side[t]).value();
      double hi = lo;
      for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      CHECK(traj.predictions[t] >= lo - 1e-12);
      CHECK(traj.predictions[t] <= hi + 1e-12);
      CHECK(traj.predictions[t] >= 0.0);
      CHECK(traj.predictions[t] <= 1.0);
    }
  }
}

TEST_CASE("ssi run equals plain ewa over the augmented class") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 20;
    const std::size_t N = 1 + rep % 3;
    std::vector<double> values(N);
    for (double& v : values) v = unif(rng);
    const ChannelSpec ch = ChannelSpec::binary_symmetric(0.1 * (rep % 6));
    std::vector<Outcome> bits;
    for (std::size_t t = 0; t < n; ++t) bits.push_back(Outcome(unif(rng) < 0.5 ? 0 : 1));
    const TargetSequence target{bits};
    SideSequence side;
    for (std::size_t t = 0; t < n; ++t) side.push_back(ch.sample(target[t], rng));

    const Trajectory with_ssi =
        run_with_side(ch, ExpertClass::constant(values), target, side, std::nullopt);

    std::vector<std::vector<double>> rows;
    for (double v : values) rows.emplace_back(n, v);
    std::vector<double> ml_row;
    for (double s : side) ml_row.push_back(ch.ml_estimate(s).value());
    rows.push_back(ml_row);
    const Trajectory plain = run_plain_ewa(ExpertClass::fixed_sequences(rows), target, std::nullopt);

    REQUIRE(with_ssi.predictions.size() == plain.predictions.size());
    for (std::size_t t = 0; t < n; ++t) {
      CHECK(std::abs(with_ssi.predictions[t] - plain.predictions[t]) <= 1e-12);
    }
  }
}

TEST_CASE("per-realization regret bound against all advisers") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 1 + static_cast<std::size_t>(unif(rng) * 99);
    const std::size_t N = 1 + rep % 5;
    std::vector<double> values(N);
    for (double& v : values) v = unif(rng);
    const ChannelSpec ch = ChannelSpec::binary_symmetric(unif(rng));
    std::vector<Outcome> bits;
    for (std::size_t t = 0; t < n; ++t) bits.push_back(Outcome(unif(rng) < 0.5 ? 0 : 1));
    const TargetSequence target{bits};
    const bool use_auto = rep % 2 == 0;
    const std::optional<double> eta =
        use_auto ? std::nullopt : std::optional<double>(0.05 + 2.0 * unif(rng));

    const Trajectory traj = run(ch, ExpertClass::constant(values), target, eta, rng);
    const double eta_value = eta ? *eta : optimal_eta(N, n);
    double min_loss = *traj.ssi_loss;
    for (double l : traj.expert_losses) min_loss = std::min(min_loss, l);
    const double bound = std::log(static_cast<double>(N + 1)) / eta_value +
                         static_cast<double>(n) * eta_value / 8.0;
    CHECK(traj.forecaster_loss - min_loss <= bound + 1e-9);
  }
}

TEST_CASE("identical seeds give identical trajectories") {
  const ChannelSpec ch = ChannelSpec::additive_gaussian(0.6);
  const ExpertClass cls = ExpertClass::constant({0.2, 0.9});
  const TargetSequence target = TargetSequence::from_bits(0b1011010, 7);
  auto rng1 = std::mt19937_64(555);
  auto rng2 = std::mt19937_64(555);
  const Trajectory a = run(ch, cls, target, std::nullopt, rng1);
  const Trajectory b = run(ch, cls, target, std::nullopt, rng2);
  CHECK(a.predictions == b.predictions);
  CHECK(a.forecaster_loss == b.forecaster_loss);
  CHECK(*a.ssi_loss == *b.ssi_loss);
  CHECK(a.regret == b.regret);
}

TEST_CASE("plain ewa") {
  // one expert: the forecaster is that expert
  const Trajectory solo =
      run_plain_ewa(ExpertClass::constant({0.3}), TargetSequence::from_bits(0b101, 3), std::nullopt);
  CHECK(solo.predictions == std::vector<double>{0.3, 0.3, 0.3});
  CHECK(solo.regret == 0.0);
  CHECK(!solo.ssi_loss.has_value());

  // symmetric start
  const Trajectory pair =
      run_plain_ewa(ExpertClass::constant({0.0, 1.0}), TargetSequence::zeros(5), std::nullopt);
  CHECK(pair.predictions[0] == 0.5);

  // classical per-realization bound, n=10, N=2
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> values{unif(rng), unif(rng)};
    std::vector<Outcome> bits;
    for (int t = 0; t < 10; ++t) bits.push_back(Outcome(unif(rng) < 0.5 ? 0 : 1));
    const Trajectory traj =
        run_plain_ewa(ExpertClass::constant(values), TargetSequence{bits}, std::nullopt);
    const double eta = std::sqrt(8.0 * std::log(2.0) / 10.0);
    CHECK(traj.regret <= std::log(2.0) / eta + 10.0 * eta / 8.0 + 1e-9);
  }
}

TEST_CASE("extreme learning factors stay finite") {
  // eta large enough that raw weights would underflow to zero within a few
  // hundred steps; the common-factor rescale keeps the mixture defined
  auto rng = std::mt19937_64(9);
  std::vector<Outcome> bits;
  for (int t = 0; t < 2000; ++t) bits.push_back(Outcome(t % 3 == 0 ? 1 : 0));
  const TargetSequence target{bits};
  const Trajectory traj = run(ChannelSpec::binary_symmetric(0.4), ExpertClass::constant({0.9}),
                              target, 80.0, rng);
  for (double p : traj.predictions) {
    CHECK(std::isfinite(p));
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
  }
  double min_loss = std::min(*traj.ssi_loss, traj.expert_losses[0]);
  CHECK(traj.forecaster_loss - min_loss <= std::log(2.0) / 80.0 + 2000.0 * 80.0 / 8.0 + 1e-9);

  CHECK_THROWS_AS(ForecasterState(1, 709.0), std::invalid_argument);
  CHECK_THROWS_AS(run_plain_ewa(ExpertClass::constant({0.5, 0.6}), TargetSequence::zeros(5), 720.0),
                  std::invalid_argument);
}

TEST_CASE("length mismatches are rejected") {
  const ChannelSpec ch = ChannelSpec::binary_symmetric(0.1);
  const ExpertClass cls = ExpertClass::constant({0.5});
  CHECK_THROWS_AS(run_with_side(ch, cls, TargetSequence::zeros(3), SideSequence{0.0}, std::nullopt),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_with_side(ch, ExpertClass::fixed_sequences({{0.5, 0.5}}),
                                TargetSequence::zeros(3), SideSequence{0, 0, 0}, std::nullopt),
                  std::invalid_argument);
  auto rng = std::mt19937_64(1);
  CHECK_THROWS_AS(run_plain_ewa(ExpertClass::fixed_sequences({{0.5}}), TargetSequence::zeros(2),
                                std::nullopt),
                  std::invalid_argument);
  CHECK_THROWS_AS(run(ch, cls, TargetSequence::zeros(2), 0.0, rng), std::invalid_argument);
}
