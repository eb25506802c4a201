#include "ssi/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace ssi {

namespace {

std::string format_real(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::string BoundReport::to_key_value() const {
  std::string out;
  out += "kind=";
  out += (kind == BoundKind::Upper ? "upper" : "lower");
  out += "\nprovenance=" + provenance;
  out += "\nsqrt_term=" + format_real(sqrt_term);
  out += "\ncorrection=" + format_real(correction);
  out += "\ntotal=" + format_real(total);
  out += "\n";
  return out;
}

double sqrt_regret_term(std::size_t n, std::size_t num_experts) {
  if (n == 0 || num_experts == 0) {
    throw std::invalid_argument("bounds require n >= 1 and N >= 1");
  }
  return std::sqrt(static_cast<double>(n) / 2.0 *
                   std::log(static_cast<double>(num_experts) + 1.0));
}

BoundReport upper_bound(std::size_t n, std::size_t num_experts, double c_s_value,
                        double l_star_value) {
  if (c_s_value < 0.0 || l_star_value < 0.0) {
    throw std::invalid_argument("upper_bound requires C_S >= 0 and L* >= 0");
  }
  BoundReport r;
  r.kind = BoundKind::Upper;
  r.provenance = "theorem1";
  r.sqrt_term = sqrt_regret_term(n, num_experts);
  r.correction = std::min(c_s_value - l_star_value, 0.0);
  r.total = r.sqrt_term + r.correction;
  return r;
}

BoundReport lower_bound(std::size_t n, std::size_t num_experts, double xi_star_value) {
  if (!(xi_star_value >= 0.0 && xi_star_value <= 0.5)) {
    throw std::invalid_argument("lower_bound requires 0 <= xi* <= 1/2");
  }
  BoundReport r;
  r.kind = BoundKind::Lower;
  r.provenance = "theorem2";
  r.sqrt_term = sqrt_regret_term(n, num_experts);
  r.correction = (xi_star_value - 0.5) * static_cast<double>(n);
  r.total = r.sqrt_term + r.correction;
  return r;
}

double xi_star(const ChannelSpec& channel) {
  if (const auto* bsc = std::get_if<BinarySymmetric>(&channel.spec())) {
    return std::min(bsc->delta, 1.0 - bsc->delta);
  }
  if (const auto* g = std::get_if<AdditiveGaussian>(&channel.spec())) {
    return normal_cdf(-1.0 / (2.0 * g->sigma));
  }
  // Finite channel: under the uniform Bernoulli prior the absolute-loss
  // optimal predictor outputs the posterior majority symbol, so each side
  // symbol contributes P(s) min(q, 1-q) with q = P(Z=1 | s).
  double total = 0.0;
  const auto dist0 = channel.side_distribution(Outcome(0));
  const auto dist1 = channel.side_distribution(Outcome(1));
  for (std::size_t j = 0; j < dist0.size(); ++j) {
    const double p_s = 0.5 * dist0[j].second + 0.5 * dist1[j].second;
    if (p_s == 0.0) continue;
    const double q = 0.5 * dist1[j].second / p_s;
    total += p_s * std::min(q, 1.0 - q);
  }
  return total;
}

BoundReport corollary1_upper(std::size_t n, std::size_t num_experts, double delta, double c_f) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("corollary1_upper requires 0 <= delta <= 1");
  }
  if (!(c_f >= 0.0 && c_f <= 0.5)) {
    throw std::invalid_argument("corollary1_upper requires 0 <= c_f <= 1/2");
  }
  const double per_step = std::min(delta, 1.0 - delta);
  BoundReport r = upper_bound(n, num_experts, static_cast<double>(n) * per_step,
                              c_f * static_cast<double>(n));
  r.provenance = "corollary1";
  return r;
}

BoundReport corollary2_lower(std::size_t n, std::size_t num_experts, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("corollary2_lower requires 0 <= delta <= 1");
  }
  BoundReport r = lower_bound(n, num_experts, std::min(delta, 1.0 - delta));
  r.provenance = "corollary2";
  return r;
}

BoundReport corollary3_upper(std::size_t n, std::size_t num_experts, double sigma, double c_f) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("corollary3_upper requires sigma > 0");
  }
  const double per_step = normal_cdf(-1.0 / (2.0 * sigma));
  BoundReport r = upper_bound(n, num_experts, static_cast<double>(n) * per_step,
                              c_f * static_cast<double>(n));
  r.provenance = "corollary3";
  return r;
}

BoundReport corollary4_lower(std::size_t n, std::size_t num_experts, double sigma) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("corollary4_lower requires sigma > 0");
  }
  BoundReport r = lower_bound(n, num_experts, normal_cdf(-1.0 / (2.0 * sigma)));
  r.provenance = "corollary4";
  return r;
}

}  // namespace ssi
