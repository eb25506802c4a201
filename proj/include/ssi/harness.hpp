#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ssi/bounds.hpp"
#include "ssi/channel.hpp"
#include "ssi/core.hpp"
#include "ssi/experts.hpp"

// Monte Carlo experiment runner: deterministic per-trial seeding, bound
// verification, parameter sweeps and CSV output.
namespace ssi {

enum class TargetKind { Zeros, Ones, Random, Greedy, File };

struct TargetSpec {
  TargetKind kind = TargetKind::Zeros;
  std::string path;  // File targets only

  // "zeros" | "ones" | "random" | "greedy" | "file:<path>"
  static TargetSpec parse(const std::string& text);
  std::string to_string() const;
};

struct ExperimentConfig {
  ExperimentConfig(ChannelSpec ch, ExpertClass ex, TargetSpec t)
      : channel(std::move(ch)), experts(std::move(ex)), target(std::move(t)) {}

  ChannelSpec channel;
  ExpertClass experts;
  TargetSpec target;
  std::size_t n = 100;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::optional<double> eta;  // nullopt = auto (sqrt(8 ln(N+1)/n))
  std::string out_path;       // empty = no CSV written
  unsigned threads = 1;
};

struct TrialResult {
  double forecaster_loss;
  double best_expert_loss;
  double ssi_loss;
  double regret;
};

struct BoundCheck {
  std::string name;
  double bound_total;
  bool pass;
};

struct RegretReport {
  std::size_t n = 0;
  std::size_t num_experts = 0;
  double eta = 0.0;
  std::vector<TrialResult> trials;
  double mean_regret = 0.0;
  double regret_std = 0.0;   // sample standard deviation
  double ci95_half = 0.0;    // 1.96 * std / sqrt(trials)
  std::optional<BoundReport> upper;  // closed-form bounds when available
  std::optional<BoundReport> lower;
  // Upper bounds get a pass flag (mean - 3 CI must not exceed them). Lower
  // bounds constrain the minimax regret over all forecasters, not this run,
  // so they are reported without a flag.
  std::vector<BoundCheck> checks;

  bool all_checks_pass() const;
};

// Runs `trials` independent forecaster runs; trial i draws from the rng
// stream (seed, i), so results are independent of thread scheduling. Fixed
// target specs keep the target constant and resample only side sequences.
RegretReport run_experiment(const ExperimentConfig& config);

// run_experiment restricted to configurations whose bounds have closed form
// (BSC or Gaussian channel, constant experts); attaches the corollary bound
// values and their pass flags.
RegretReport verify_bounds(const ExperimentConfig& config);

// One report per value of the swept parameter; writes a single CSV with a
// leading param column when config.out_path is set.
// param is one of: delta, sigma, n, trials, eta.
std::vector<RegretReport> sweep(const ExperimentConfig& config, const std::string& param,
                                const std::vector<double>& values);

// CSV schema shared by run and sweep outputs.
std::string csv_header();
void append_csv_rows(std::string& out, const RegretReport& report, const std::string& param_label);
void write_text_file(const std::string& path, const std::string& content);

std::string report_to_text(const RegretReport& report);

// CLI/config-file value parsing.
std::vector<double> parse_expert_values(const std::string& comma_separated);
ChannelSpec parse_channel_spec(const std::string& kind, double delta, double sigma);
std::optional<double> parse_eta(const std::string& text);

// 12-significant-digit float formatting used in all text outputs.
std::string format_real(double v);

}  // namespace ssi
