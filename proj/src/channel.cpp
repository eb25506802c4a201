#include "ssi/channel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ssi/normal.hpp"

namespace ssi {

namespace {

constexpr double kRowSumTolerance = 1e-12;

int bsc_side_to_bit(double side) {
  if (side == 0.0) return 0;
  if (side == 1.0) return 1;
  throw std::invalid_argument("binary symmetric channel: side instance must be 0 or 1");
}

std::size_t finite_symbol_index(const FiniteConditional& ch, double side) {
  for (std::size_t j = 0; j < ch.side_alphabet.size(); ++j) {
    if (ch.side_alphabet[j] == side) return j;
  }
  throw std::invalid_argument("side instance not in the channel's side alphabet");
}

std::vector<double> parse_real_line(const std::string& line, const std::string& context) {
  std::istringstream is(line);
  std::vector<double> vals;
  double v;
  while (is >> v) vals.push_back(v);
  std::string rest;
  if (is.clear(), is >> rest) {
    throw std::runtime_error(context + ": non-numeric token '" + rest + "'");
  }
  if (vals.empty()) {
    throw std::runtime_error(context + ": empty line");
  }
  return vals;
}

}  // namespace

ChannelSpec ChannelSpec::binary_symmetric(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("binary symmetric channel requires 0 <= delta <= 1");
  }
  return ChannelSpec(BinarySymmetric{delta});
}

ChannelSpec ChannelSpec::additive_gaussian(double sigma) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("Gaussian channel requires sigma > 0");
  }
  return ChannelSpec(AdditiveGaussian{sigma});
}

ChannelSpec ChannelSpec::finite(std::vector<double> side_alphabet, std::vector<double> row0,
                                std::vector<double> row1) {
  const std::size_t m = side_alphabet.size();
  if (m == 0) {
    throw std::invalid_argument("finite channel: empty side alphabet");
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (side_alphabet[i] == side_alphabet[j]) {
        throw std::invalid_argument("finite channel: duplicate side symbol");
      }
    }
  }
  for (const auto* row : {&row0, &row1}) {
    if (row->size() != m) {
      throw std::invalid_argument("finite channel: row length does not match alphabet");
    }
    double sum = 0.0;
    for (double p : *row) {
      if (p < 0.0) throw std::invalid_argument("finite channel: negative probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw std::invalid_argument("finite channel: row does not sum to 1");
    }
  }
  return ChannelSpec(FiniteConditional{std::move(side_alphabet), {std::move(row0), std::move(row1)}});
}

ChannelSpec ChannelSpec::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open channel file: " + path);
  }
  std::string alphabet_line, row0_line, row1_line;
  if (!std::getline(in, alphabet_line) || !std::getline(in, row0_line) ||
      !std::getline(in, row1_line)) {
    throw std::runtime_error(path + ": expected 3 lines (alphabet, row for target 0, row for target 1)");
  }
  return finite(parse_real_line(alphabet_line, path + ":1"),
                parse_real_line(row0_line, path + ":2"), parse_real_line(row1_line, path + ":3"));
}

double ChannelSpec::sample(Outcome target, std::mt19937_64& rng) const {
  if (const auto* bsc = std::get_if<BinarySymmetric>(&spec_)) {
    std::bernoulli_distribution flip(bsc->delta);
    return flip(rng) ? target.flipped().real() : target.real();
  }
  if (const auto* g = std::get_if<AdditiveGaussian>(&spec_)) {
    std::normal_distribution<double> noise(0.0, g->sigma);
    return target.real() + noise(rng);
  }
  const auto& ch = std::get<FiniteConditional>(spec_);
  const auto& row = ch.rows[static_cast<std::size_t>(target.value())];
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double u = unif(rng);
  double acc = 0.0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    acc += row[j];
    if (u < acc) return ch.side_alphabet[j];
  }
  return ch.side_alphabet.back();
}

Prediction ChannelSpec::ml_estimate(double side) const {
  if (const auto* bsc = std::get_if<BinarySymmetric>(&spec_)) {
    const int s = bsc_side_to_bit(side);
    if (bsc->delta < 0.5) return Prediction(static_cast<double>(s));
    if (bsc->delta > 0.5) return Prediction(static_cast<double>(1 - s));
    return Prediction(0.5);
  }
  if (std::holds_alternative<AdditiveGaussian>(spec_)) {
    return Prediction(side >= 0.5 ? 1.0 : 0.0);
  }
  const auto& ch = std::get<FiniteConditional>(spec_);
  const std::size_t j = finite_symbol_index(ch, side);
  const double p0 = ch.rows[0][j];
  const double p1 = ch.rows[1][j];
  if (p0 > p1) return Prediction(0.0);
  if (p1 > p0) return Prediction(1.0);
  return Prediction(0.5);
}

double ChannelSpec::likelihood(double side, Outcome target) const {
  if (const auto* bsc = std::get_if<BinarySymmetric>(&spec_)) {
    const int s = bsc_side_to_bit(side);
    return s == target.value() ? 1.0 - bsc->delta : bsc->delta;
  }
  if (const auto* g = std::get_if<AdditiveGaussian>(&spec_)) {
    return normal_pdf((side - target.real()) / g->sigma) / g->sigma;
  }
  const auto& ch = std::get<FiniteConditional>(spec_);
  return ch.rows[static_cast<std::size_t>(target.value())][finite_symbol_index(ch, side)];
}

double ChannelSpec::expected_ml_loss(Outcome target) const {
  if (const auto* bsc = std::get_if<BinarySymmetric>(&spec_)) {
    return std::min(bsc->delta, 1.0 - bsc->delta);
  }
  if (const auto* g = std::get_if<AdditiveGaussian>(&spec_)) {
    // ml is the indicator of side >= 1/2; either target symbol is misread
    // with probability Phi(-1/(2 sigma)).
    return normal_cdf(-1.0 / (2.0 * g->sigma));
  }
  double loss = 0.0;
  for (const auto& [symbol, prob] : side_distribution(target)) {
    loss += prob * std::abs(ml_estimate(symbol).value() - target.real());
  }
  return loss;
}

double ChannelSpec::expected_ml_loss_per_step() const {
  if (std::holds_alternative<FiniteConditional>(spec_)) {
    return std::max(expected_ml_loss(Outcome(0)), expected_ml_loss(Outcome(1)));
  }
  return expected_ml_loss(Outcome(0));  // symmetric in the target for BSC/Gaussian
}

double ChannelSpec::c_s(std::size_t n) const {
  if (n == 0) {
    throw std::invalid_argument("c_s requires n >= 1");
  }
  return static_cast<double>(n) * expected_ml_loss_per_step();
}

bool ChannelSpec::has_finite_side_alphabet() const {
  return !std::holds_alternative<AdditiveGaussian>(spec_);
}

std::vector<std::pair<double, double>> ChannelSpec::side_distribution(Outcome target) const {
  if (const auto* bsc = std::get_if<BinarySymmetric>(&spec_)) {
    const double stay = 1.0 - bsc->delta;
    if (target.value() == 0) return {{0.0, stay}, {1.0, bsc->delta}};
    return {{0.0, bsc->delta}, {1.0, stay}};
  }
  if (std::holds_alternative<AdditiveGaussian>(spec_)) {
    throw std::invalid_argument("side_distribution: Gaussian channel has no finite side alphabet");
  }
  const auto& ch = std::get<FiniteConditional>(spec_);
  const auto& row = ch.rows[static_cast<std::size_t>(target.value())];
  std::vector<std::pair<double, double>> dist;
  dist.reserve(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) {
    dist.emplace_back(ch.side_alphabet[j], row[j]);
  }
  return dist;
}

std::vector<std::pair<double, double>> ChannelSpec::ml_advice_distribution(Outcome target) const {
  if (const auto* g = std::get_if<AdditiveGaussian>(&spec_)) {
    // advice = 1 iff target + noise >= 1/2
    const double p_one = 1.0 - normal_cdf((0.5 - target.real()) / g->sigma);
    return {{0.0, 1.0 - p_one}, {1.0, p_one}};
  }
  double p0 = 0.0, p_half = 0.0, p1 = 0.0;
  for (const auto& [symbol, prob] : side_distribution(target)) {
    const double advice = ml_estimate(symbol).value();
    if (advice == 0.0) {
      p0 += prob;
    } else if (advice == 1.0) {
      p1 += prob;
    } else {
      p_half += prob;
    }
  }
  std::vector<std::pair<double, double>> dist;
  if (p0 > 0.0) dist.emplace_back(0.0, p0);
  if (p_half > 0.0) dist.emplace_back(0.5, p_half);
  if (p1 > 0.0) dist.emplace_back(1.0, p1);
  return dist;
}

}  // namespace ssi
