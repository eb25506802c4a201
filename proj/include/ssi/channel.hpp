#pragma once

#include <array>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ssi/core.hpp"

// Side-information channels P(X^S | X^T): sampling, maximum-likelihood
// estimation of the target from a side instance, and the expected per-step
// loss of that estimate.
namespace ssi {

// Side instance equals the target with probability 1-delta, flipped with
// probability delta.
struct BinarySymmetric {
  double delta;
};

// Side instance is target + N(0, sigma^2).
struct AdditiveGaussian {
  double sigma;
};

// Arbitrary finite side alphabet; one conditional row per target symbol.
struct FiniteConditional {
  std::vector<double> side_alphabet;
  std::array<std::vector<double>, 2> rows;  // rows[x][j] = P(alphabet[j] | target x)
};

class ChannelSpec {
 public:
  static ChannelSpec binary_symmetric(double delta);
  static ChannelSpec additive_gaussian(double sigma);
  static ChannelSpec finite(std::vector<double> side_alphabet, std::vector<double> row0,
                            std::vector<double> row1);
  // Text format: line 1 = side alphabet, lines 2-3 = P(side|target) rows for
  // target 0 and target 1, all space-separated.
  static ChannelSpec from_file(const std::string& path);

  // One draw from P(. | target).
  double sample(Outcome target, std::mt19937_64& rng) const;

  // argmax over targets of P(side | target); ties map to 0.5.
  Prediction ml_estimate(double side) const;

  // P(side | target): mass for BSC/finite channels, density for Gaussian.
  double likelihood(double side, Outcome target) const;

  // E over P(. | target) of |ml_estimate - target| for one step.
  double expected_ml_loss(Outcome target) const;
  // Worst case of expected_ml_loss over the two target symbols, so that
  // n * expected_ml_loss_per_step() bounds the expected cumulative ML loss
  // for every target sequence.
  double expected_ml_loss_per_step() const;
  double c_s(std::size_t n) const;

  bool has_finite_side_alphabet() const;
  // (symbol, probability) pairs of P(. | target); finite channels only.
  std::vector<std::pair<double, double>> side_distribution(Outcome target) const;
  // Distribution of the ML advice given the target symbol; defined for every
  // channel since the advice takes at most three values (0, 0.5, 1).
  std::vector<std::pair<double, double>> ml_advice_distribution(Outcome target) const;

  const std::variant<BinarySymmetric, AdditiveGaussian, FiniteConditional>& spec() const {
    return spec_;
  }

 private:
  explicit ChannelSpec(std::variant<BinarySymmetric, AdditiveGaussian, FiniteConditional> s)
      : spec_(std::move(s)) {}

  std::variant<BinarySymmetric, AdditiveGaussian, FiniteConditional> spec_;
};

}  // namespace ssi
