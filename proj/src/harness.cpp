#include "ssi/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ssi/forecaster.hpp"
#include "ssi/oracle.hpp"
#include "ssi/rng.hpp"

namespace ssi {

namespace {

// rng stream reserved for building the greedy-adversary target
constexpr std::uint64_t kGreedyStream = std::numeric_limits<std::uint64_t>::max();

void run_indexed(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

TargetSequence draw_random_target(std::size_t n, std::mt19937_64& rng) {
  std::bernoulli_distribution bit(0.5);
  std::vector<Outcome> xs;
  xs.reserve(n);
  for (std::size_t t = 0; t < n; ++t) xs.push_back(Outcome(bit(rng) ? 1 : 0));
  return TargetSequence(std::move(xs));
}

void validate_config(const ExperimentConfig& config) {
  if (config.n == 0) throw std::invalid_argument("config: n must be >= 1");
  if (config.trials == 0) throw std::invalid_argument("config: trials must be >= 1");
  if (config.eta && !(*config.eta > 0.0)) {
    throw std::invalid_argument("config: eta must be positive");
  }
  if (auto h = config.experts.horizon(); h && *h != config.n) {
    throw std::invalid_argument("config: expert horizon does not match n");
  }
}

void attach_checks(RegretReport& report) {
  report.checks.clear();
  if (report.upper) {
    const double slack = report.mean_regret - 3.0 * report.ci95_half;
    report.checks.push_back(BoundCheck{"mean-3ci<=" + report.upper->provenance,
                                       report.upper->total, slack <= report.upper->total});
  }
}

}  // namespace

TargetSpec TargetSpec::parse(const std::string& text) {
  if (text == "zeros") return {TargetKind::Zeros, ""};
  if (text == "ones") return {TargetKind::Ones, ""};
  if (text == "random") return {TargetKind::Random, ""};
  if (text == "greedy") return {TargetKind::Greedy, ""};
  if (text.rfind("file:", 0) == 0) return {TargetKind::File, text.substr(5)};
  throw std::invalid_argument("unknown target spec '" + text +
                              "' (expected zeros|ones|random|greedy|file:<path>)");
}

std::string TargetSpec::to_string() const {
  switch (kind) {
    case TargetKind::Zeros: return "zeros";
    case TargetKind::Ones: return "ones";
    case TargetKind::Random: return "random";
    case TargetKind::Greedy: return "greedy";
    case TargetKind::File: return "file:" + path;
  }
  return "?";
}

bool RegretReport::all_checks_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.pass; });
}

RegretReport run_experiment(const ExperimentConfig& config) {
  validate_config(config);
  const std::size_t n = config.n;
  const std::size_t N = config.experts.num_experts();

  std::optional<TargetSequence> fixed_target;
  switch (config.target.kind) {
    case TargetKind::Zeros:
      fixed_target = TargetSequence::zeros(n);
      break;
    case TargetKind::Ones:
      fixed_target = TargetSequence::ones(n);
      break;
    case TargetKind::File: {
      fixed_target = TargetSequence::from_file(config.target.path);
      if (fixed_target->size() != n) {
        throw std::invalid_argument("target file length " + std::to_string(fixed_target->size()) +
                                    " does not match n=" + std::to_string(n));
      }
      break;
    }
    case TargetKind::Greedy: {
      std::mt19937_64 rng = make_stream_rng(config.seed, kGreedyStream);
      fixed_target = greedy_adversary(config.channel, config.experts, n, config.eta, rng);
      break;
    }
    case TargetKind::Random:
      break;  // drawn per trial
  }

  RegretReport report;
  report.n = n;
  report.num_experts = N;
  report.eta = config.eta ? *config.eta : optimal_eta(N, n);
  report.trials.resize(config.trials);

  run_indexed(config.trials, config.threads, [&](std::size_t i) {
    std::mt19937_64 rng = make_stream_rng(config.seed, i);
    const TargetSequence target =
        fixed_target ? *fixed_target : draw_random_target(n, rng);
    const Trajectory traj = run(config.channel, config.experts, target, config.eta, rng);
    double best = std::numeric_limits<double>::infinity();
    for (double l : traj.expert_losses) best = std::min(best, l);
    report.trials[i] = TrialResult{traj.forecaster_loss, best, *traj.ssi_loss, traj.regret};
  });

  double sum = 0.0;
  for (const TrialResult& t : report.trials) sum += t.regret;
  report.mean_regret = sum / static_cast<double>(config.trials);
  double sq = 0.0;
  for (const TrialResult& t : report.trials) {
    const double d = t.regret - report.mean_regret;
    sq += d * d;
  }
  report.regret_std =
      config.trials > 1 ? std::sqrt(sq / static_cast<double>(config.trials - 1)) : 0.0;
  report.ci95_half = 1.96 * report.regret_std / std::sqrt(static_cast<double>(config.trials));

  if (config.experts.is_constant()) {
    report.upper = upper_bound(n, N, config.channel.c_s(n), config.experts.l_star(n));
    report.lower = lower_bound(n, N, xi_star(config.channel));
  }
  attach_checks(report);

  if (!config.out_path.empty()) {
    std::string csv = csv_header();
    append_csv_rows(csv, report, "");
    write_text_file(config.out_path, csv);
  }
  return report;
}

RegretReport verify_bounds(const ExperimentConfig& config) {
  if (!config.experts.is_constant()) {
    throw std::invalid_argument(
        "verify-bounds needs constant experts (no closed-form L*); use the oracle subcommand "
        "for exact small-n enumeration instead");
  }
  const bool is_bsc = std::holds_alternative<BinarySymmetric>(config.channel.spec());
  const bool is_gauss = std::holds_alternative<AdditiveGaussian>(config.channel.spec());
  if (!is_bsc && !is_gauss) {
    throw std::invalid_argument(
        "verify-bounds needs a bsc or gauss channel (closed-form C_S and xi*); use the oracle "
        "subcommand for finite channels instead");
  }

  RegretReport report = run_experiment(config);
  const double c_f = config.experts.c_f();
  if (is_bsc) {
    const double delta = std::get<BinarySymmetric>(config.channel.spec()).delta;
    report.upper = corollary1_upper(config.n, report.num_experts, delta, c_f);
    report.lower = corollary2_lower(config.n, report.num_experts, delta);
  } else {
    const double sigma = std::get<AdditiveGaussian>(config.channel.spec()).sigma;
    report.upper = corollary3_upper(config.n, report.num_experts, sigma, c_f);
    report.lower = corollary4_lower(config.n, report.num_experts, sigma);
  }
  attach_checks(report);
  return report;
}

std::vector<RegretReport> sweep(const ExperimentConfig& config, const std::string& param,
                                const std::vector<double>& values) {
  if (values.empty()) {
    throw std::invalid_argument("sweep: no values given");
  }
  const bool known = param == "delta" || param == "sigma" || param == "n" ||
                     param == "trials" || param == "eta";
  if (!known) {
    throw std::invalid_argument("sweep: unknown parameter '" + param +
                                "' (expected delta|sigma|n|trials|eta)");
  }

  std::vector<RegretReport> reports;
  reports.reserve(values.size());
  std::string csv = csv_header();
  for (double value : values) {
    ExperimentConfig cfg = config;
    cfg.out_path.clear();
    if (param == "delta") {
      if (!std::holds_alternative<BinarySymmetric>(cfg.channel.spec())) {
        throw std::invalid_argument("sweep over delta requires a bsc channel");
      }
      cfg.channel = ChannelSpec::binary_symmetric(value);
    } else if (param == "sigma") {
      if (!std::holds_alternative<AdditiveGaussian>(cfg.channel.spec())) {
        throw std::invalid_argument("sweep over sigma requires a gauss channel");
      }
      cfg.channel = ChannelSpec::additive_gaussian(value);
    } else if (param == "eta") {
      cfg.eta = value;
    } else {
      if (!(value >= 1.0) || value != std::floor(value)) {
        throw std::invalid_argument("sweep: " + param + " values must be positive integers");
      }
      if (param == "n") {
        cfg.n = static_cast<std::size_t>(value);
      } else {
        cfg.trials = static_cast<std::size_t>(value);
      }
    }
    reports.push_back(run_experiment(cfg));
    append_csv_rows(csv, reports.back(), format_real(value));
  }
  if (!config.out_path.empty()) {
    write_text_file(config.out_path, csv);
  }
  return reports;
}

std::string format_real(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string csv_header() {
  return "param,trial,n,N,eta,forecaster_loss,best_expert_loss,ssi_loss,regret,"
         "upper_bound,lower_bound\n";
}

void append_csv_rows(std::string& out, const RegretReport& report,
                     const std::string& param_label) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const std::string upper = format_real(report.upper ? report.upper->total : nan);
  const std::string lower = format_real(report.lower ? report.lower->total : nan);
  for (std::size_t i = 0; i < report.trials.size(); ++i) {
    const TrialResult& t = report.trials[i];
    out += param_label;
    out += ',';
    out += std::to_string(i);
    out += ',';
    out += std::to_string(report.n);
    out += ',';
    out += std::to_string(report.num_experts);
    out += ',';
    out += format_real(report.eta);
    out += ',';
    out += format_real(t.forecaster_loss);
    out += ',';
    out += format_real(t.best_expert_loss);
    out += ',';
    out += format_real(t.ssi_loss);
    out += ',';
    out += format_real(t.regret);
    out += ',';
    out += upper;
    out += ',';
    out += lower;
    out += '\n';
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  out << content;
  if (!out) {
    throw std::runtime_error("failed writing output file: " + path);
  }
}

std::string report_to_text(const RegretReport& report) {
  std::ostringstream os;
  os << "trials=" << report.trials.size() << " n=" << report.n << " N=" << report.num_experts
     << " eta=" << format_real(report.eta) << "\n";
  os << "mean_regret=" << format_real(report.mean_regret)
     << " std=" << format_real(report.regret_std)
     << " ci95_half=" << format_real(report.ci95_half) << "\n";
  if (report.upper) {
    os << report.upper->provenance << "_upper=" << format_real(report.upper->total) << "\n";
  }
  if (report.lower) {
    os << report.lower->provenance << "_lower=" << format_real(report.lower->total)
       << " (bounds the minimax regret over all forecasters; no pass/fail)\n";
  }
  for (const BoundCheck& c : report.checks) {
    os << "check " << c.name << "=" << format_real(c.bound_total) << " : "
       << (c.pass ? "PASS" : "FAIL") << "\n";
  }
  return os.str();
}

std::vector<double> parse_expert_values(const std::string& comma_separated) {
  std::vector<double> values;
  std::string token;
  std::istringstream is(comma_separated);
  while (std::getline(is, token, ',')) {
    if (token.empty()) {
      throw std::invalid_argument("empty expert value in '" + comma_separated + "'");
    }
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad expert value '" + token + "'");
    }
    if (used != token.size()) {
      throw std::invalid_argument("bad expert value '" + token + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) {
    throw std::invalid_argument("no expert values given");
  }
  return values;
}

ChannelSpec parse_channel_spec(const std::string& kind, double delta, double sigma) {
  if (kind == "bsc") return ChannelSpec::binary_symmetric(delta);
  if (kind == "gauss") return ChannelSpec::additive_gaussian(sigma);
  if (kind.rfind("file:", 0) == 0) return ChannelSpec::from_file(kind.substr(5));
  throw std::invalid_argument("unknown channel '" + kind + "' (expected bsc|gauss|file:<path>)");
}

std::optional<double> parse_eta(const std::string& text) {
  if (text == "auto") return std::nullopt;
  std::size_t used = 0;
  double v;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad eta '" + text + "' (expected auto or a positive real)");
  }
  if (used != text.size() || !(v > 0.0)) {
    throw std::invalid_argument("bad eta '" + text + "' (expected auto or a positive real)");
  }
  return v;
}

}  // namespace ssi
