#include "ssi/experts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ssi {

namespace {

void check_value_range(double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument("expert prediction outside [0,1]: " + std::to_string(v));
  }
}

}  // namespace

ExpertClass::ExpertClass(std::variant<ConstantExperts, FixedSequenceExperts> v)
    : variant_(std::move(v)) {}

ExpertClass ExpertClass::constant(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("expert class needs at least one expert");
  }
  for (double v : values) check_value_range(v);
  return ExpertClass(ConstantExperts{std::move(values)});
}

ExpertClass ExpertClass::fixed_sequences(std::vector<std::vector<double>> sequences) {
  if (sequences.empty()) {
    throw std::invalid_argument("expert class needs at least one expert");
  }
  const std::size_t n = sequences.front().size();
  if (n == 0) {
    throw std::invalid_argument("fixed-sequence experts need horizon >= 1");
  }
  for (const auto& row : sequences) {
    if (row.size() != n) {
      throw std::invalid_argument("fixed-sequence experts must all share one horizon");
    }
    for (double v : row) check_value_range(v);
  }
  return ExpertClass(FixedSequenceExperts{std::move(sequences)});
}

std::size_t ExpertClass::num_experts() const {
  if (const auto* c = std::get_if<ConstantExperts>(&variant_)) return c->values.size();
  return std::get<FixedSequenceExperts>(variant_).sequences.size();
}

std::optional<std::size_t> ExpertClass::horizon() const {
  if (const auto* f = std::get_if<FixedSequenceExperts>(&variant_)) {
    return f->sequences.front().size();
  }
  return std::nullopt;
}

bool ExpertClass::is_constant() const { return std::holds_alternative<ConstantExperts>(variant_); }

const std::vector<double>& ExpertClass::constant_values() const {
  if (const auto* c = std::get_if<ConstantExperts>(&variant_)) return c->values;
  throw std::invalid_argument("expert class is not constant");
}

Prediction ExpertClass::predict(std::size_t theta, std::size_t t,
                                std::span<const Outcome> /*history*/) const {
  if (theta >= num_experts()) {
    throw std::out_of_range("expert index out of range");
  }
  if (const auto* c = std::get_if<ConstantExperts>(&variant_)) {
    return Prediction(c->values[theta]);
  }
  const auto& seq = std::get<FixedSequenceExperts>(variant_).sequences[theta];
  if (t >= seq.size()) {
    throw std::out_of_range("time step beyond the experts' horizon");
  }
  return Prediction(seq[t]);
}

double ExpertClass::expert_cumulative_loss(std::size_t theta, const TargetSequence& target) const {
  if (theta >= num_experts()) {
    throw std::out_of_range("expert index out of range");
  }
  if (const auto* f = std::get_if<FixedSequenceExperts>(&variant_)) {
    if (f->sequences[theta].size() != target.size()) {
      throw std::invalid_argument("expert horizon does not match target length");
    }
  }
  double loss = 0.0;
  for (std::size_t t = 0; t < target.size(); ++t) {
    loss += absolute_loss(predict(theta, t, target.instances().subspan(0, t)), target[t]);
  }
  return loss;
}

std::vector<double> ExpertClass::per_expert_cumulative_loss(const TargetSequence& target) const {
  std::vector<double> losses;
  losses.reserve(num_experts());
  for (std::size_t theta = 0; theta < num_experts(); ++theta) {
    losses.push_back(expert_cumulative_loss(theta, target));
  }
  return losses;
}

double ExpertClass::best_expert_cumulative_loss(const TargetSequence& target) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t theta = 0; theta < num_experts(); ++theta) {
    best = std::min(best, expert_cumulative_loss(theta, target));
  }
  return best;
}

double ExpertClass::l_star(std::size_t n) const {
  if (n == 0) {
    throw std::invalid_argument("l_star requires n >= 1");
  }
  // The best expert's loss against a target with k ones is linear in k, so
  // the infimum sits at the all-zeros or all-ones sequence.
  return static_cast<double>(n) * c_f();
}

double ExpertClass::c_f() const {
  const auto& values = constant_values();
  double best = std::numeric_limits<double>::infinity();
  for (double c : values) {
    best = std::min(best, std::min(c, 1.0 - c));
  }
  return best;
}

}  // namespace ssi
