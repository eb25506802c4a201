#include "ssi/core.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace ssi {

Outcome::Outcome(int v) : value_(v) {
  if (v != 0 && v != 1) {
    throw std::invalid_argument("Outcome must be 0 or 1, got " + std::to_string(v));
  }
}

Prediction::Prediction(double v) : value_(v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument("Prediction must lie in [0,1], got " + std::to_string(v));
  }
}

TargetSequence::TargetSequence(std::vector<Outcome> instances) : instances_(std::move(instances)) {
  if (instances_.empty()) {
    throw std::invalid_argument("TargetSequence must have length >= 1");
  }
}

TargetSequence TargetSequence::zeros(std::size_t n) {
  return TargetSequence(std::vector<Outcome>(n, Outcome(0)));
}

TargetSequence TargetSequence::ones(std::size_t n) {
  return TargetSequence(std::vector<Outcome>(n, Outcome(1)));
}

TargetSequence TargetSequence::from_bits(std::uint64_t bits, std::size_t n) {
  if (n == 0 || n > 64) {
    throw std::invalid_argument("from_bits requires 1 <= n <= 64");
  }
  std::vector<Outcome> xs;
  xs.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    xs.push_back(Outcome(static_cast<int>((bits >> t) & 1u)));
  }
  return TargetSequence(std::move(xs));
}

TargetSequence TargetSequence::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open target file: " + path);
  }
  std::vector<Outcome> xs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.pop_back();
    }
    if (line.empty()) continue;
    if (line.size() != 1 || (line[0] != '0' && line[0] != '1')) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected a single '0' or '1'");
    }
    xs.push_back(Outcome(line[0] - '0'));
  }
  if (xs.empty()) {
    throw std::runtime_error("target file is empty: " + path);
  }
  return TargetSequence(std::move(xs));
}

std::vector<double> TargetSequence::as_reals() const {
  std::vector<double> r;
  r.reserve(instances_.size());
  for (Outcome x : instances_) r.push_back(x.real());
  return r;
}

TargetSequence TargetSequence::flipped() const {
  std::vector<Outcome> xs;
  xs.reserve(instances_.size());
  for (Outcome x : instances_) xs.push_back(x.flipped());
  return TargetSequence(std::move(xs));
}

bool operator==(const TargetSequence& a, const TargetSequence& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (a[t] != b[t]) return false;
  }
  return true;
}

double absolute_loss(double a, Outcome b) {
  if (!(a >= 0.0 && a <= 1.0)) {
    throw std::invalid_argument("absolute_loss: prediction outside [0,1]");
  }
  return std::abs(a - b.real());
}

double absolute_loss(const Prediction& a, Outcome b) { return std::abs(a.value() - b.real()); }

double cumulative_loss(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("cumulative_loss: sequence lengths differ");
  }
  double total = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (!(a[t] >= 0.0 && a[t] <= 1.0) || !(b[t] >= 0.0 && b[t] <= 1.0)) {
      throw std::invalid_argument("cumulative_loss: entry outside [0,1] at step " +
                                  std::to_string(t));
    }
    total += std::abs(a[t] - b[t]);
  }
  return total;
}

double cumulative_loss(std::span<const double> predictions, const TargetSequence& target) {
  if (predictions.size() != target.size()) {
    throw std::invalid_argument("cumulative_loss: prediction/target lengths differ");
  }
  double total = 0.0;
  for (std::size_t t = 0; t < predictions.size(); ++t) {
    total += absolute_loss(predictions[t], target[t]);
  }
  return total;
}

}  // namespace ssi
