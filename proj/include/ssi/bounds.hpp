#pragma once

#include <cstddef>
#include <string>

#include "ssi/channel.hpp"
#include "ssi/normal.hpp"

// Closed-form minimax regret bound calculators: the generic upper/lower
// bounds plus their binary-symmetric and Gaussian channel instantiations.
// Logarithms are natural throughout.
namespace ssi {

enum class BoundKind { Upper, Lower };

struct BoundReport {
  BoundKind kind;
  std::string provenance;  // which theorem/corollary produced it
  double sqrt_term;        // sqrt((n/2) ln(N+1))
  double correction;       // channel/expert-dependent additive term, <= 0
  double total;            // sqrt_term + correction

  // Flat key-value record, one field per line.
  std::string to_key_value() const;
};

// sqrt((n/2) ln(N+1)) for N experts over horizon n.
double sqrt_regret_term(std::size_t n, std::size_t num_experts);

// Minimax regret upper bound: sqrt_term + min(C_S - L*, 0).
BoundReport upper_bound(std::size_t n, std::size_t num_experts, double c_s_value,
                        double l_star_value);

// Minimax regret lower bound: sqrt_term + (xi* - 1/2) n. Requires
// 0 <= xi* <= 1/2 (predicting 1/2 already achieves 1/2 per step).
BoundReport lower_bound(std::size_t n, std::size_t num_experts, double xi_star_value);

// Least expected absolute loss of any one-step predictor of a uniform
// Bernoulli target observed through the channel. min(delta, 1-delta) for the
// BSC, Phi(-1/(2 sigma)) for the Gaussian channel, and a posterior sum for
// finite channels (uniform Bernoulli prior).
double xi_star(const ChannelSpec& channel);

// BSC upper bound with linear best-expert loss L*(n) = c_f n.
BoundReport corollary1_upper(std::size_t n, std::size_t num_experts, double delta, double c_f);
// BSC lower bound.
BoundReport corollary2_lower(std::size_t n, std::size_t num_experts, double delta);
// Gaussian-channel upper bound with L*(n) = c_f n.
BoundReport corollary3_upper(std::size_t n, std::size_t num_experts, double sigma, double c_f);
// Gaussian-channel lower bound.
BoundReport corollary4_lower(std::size_t n, std::size_t num_experts, double sigma);

}  // namespace ssi
