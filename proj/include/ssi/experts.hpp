#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "ssi/core.hpp"

// Expert classes the forecaster competes against. Constant experts repeat one
// value forever; fixed-sequence experts replay a stored prediction table.
namespace ssi {

struct ConstantExperts {
  std::vector<double> values;  // c_theta, one per expert
};

struct FixedSequenceExperts {
  std::vector<std::vector<double>> sequences;  // sequences[theta][t]
};

class ExpertClass {
 public:
  static ExpertClass constant(std::vector<double> values);
  static ExpertClass fixed_sequences(std::vector<std::vector<double>> sequences);

  std::size_t num_experts() const;
  // Horizon baked into the class, if any (fixed sequences only).
  std::optional<std::size_t> horizon() const;
  bool is_constant() const;
  const std::vector<double>& constant_values() const;

  // Prediction of expert theta (0-based) at step t (0-based). The history
  // parameter keeps the interface uniform; current variants ignore it.
  Prediction predict(std::size_t theta, std::size_t t, std::span<const Outcome> history) const;

  double expert_cumulative_loss(std::size_t theta, const TargetSequence& target) const;
  std::vector<double> per_expert_cumulative_loss(const TargetSequence& target) const;
  double best_expert_cumulative_loss(const TargetSequence& target) const;

  // inf over all binary target sequences of the best expert's cumulative
  // loss; closed form n * min_theta min(c, 1-c), constant classes only.
  double l_star(std::size_t n) const;
  // l_star(n) / n, independent of n; constant classes only.
  double c_f() const;

 private:
  explicit ExpertClass(std::variant<ConstantExperts, FixedSequenceExperts> v);

  std::variant<ConstantExperts, FixedSequenceExperts> variant_;
};

}  // namespace ssi
