#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

// Domain primitives: binary outcomes, predictions in [0,1], target and side
// sequences, and the absolute loss. Everything here is an immutable value.
namespace ssi {

// One symbol of the target sequence, restricted to {0, 1}.
class Outcome {
 public:
  explicit Outcome(int v);
  int value() const { return value_; }
  double real() const { return static_cast<double>(value_); }
  Outcome flipped() const { return Outcome(1 - value_); }
  friend bool operator==(Outcome a, Outcome b) { return a.value_ == b.value_; }
  friend bool operator!=(Outcome a, Outcome b) { return a.value_ != b.value_; }

 private:
  int value_;
};

// A point of the decision space [0, 1].
class Prediction {
 public:
  explicit Prediction(double v);
  double value() const { return value_; }

 private:
  double value_;
};

// The sequence to be predicted; length n >= 1, entries in {0, 1}.
class TargetSequence {
 public:
  explicit TargetSequence(std::vector<Outcome> instances);

  static TargetSequence zeros(std::size_t n);
  static TargetSequence ones(std::size_t n);
  // Interprets bit t of `bits` as the outcome at step t; n <= 64.
  static TargetSequence from_bits(std::uint64_t bits, std::size_t n);
  // One character per line, '0' or '1'.
  static TargetSequence from_file(const std::string& path);

  std::size_t size() const { return instances_.size(); }
  Outcome operator[](std::size_t t) const { return instances_[t]; }
  std::span<const Outcome> instances() const { return instances_; }
  std::vector<double> as_reals() const;
  TargetSequence flipped() const;

  friend bool operator==(const TargetSequence& a, const TargetSequence& b);

 private:
  std::vector<Outcome> instances_;
};

// Side instances live on the real line (Gaussian channels leave {0,1}).
using SideSequence = std::vector<double>;

// |a - b| for a in [0,1] and b in {0,1}.
double absolute_loss(double a, Outcome b);
double absolute_loss(const Prediction& a, Outcome b);

// Sum of per-step absolute losses over two equal-length sequences in [0,1].
double cumulative_loss(std::span<const double> a, std::span<const double> b);
double cumulative_loss(std::span<const double> predictions, const TargetSequence& target);

}  // namespace ssi
