// Command-line front end: Monte Carlo runs, bound verification, parameter
// sweeps, exact small-n oracles and SVG plots.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ssi/bounds.hpp"
#include "ssi/harness.hpp"
#include "ssi/oracle.hpp"
#include "ssi/plot.hpp"
#include "ssi/rng.hpp"

namespace {

struct CommonFlags {
  std::string channel = "bsc";
  double delta = 0.1;
  double sigma = 0.5;
  std::string experts = "0.1,0.7";
  std::string target = "zeros";
  std::size_t n = 100;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::string eta = "auto";
  std::string out;
  std::string config;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
};

void add_common_flags(CLI::App* cmd, CommonFlags* flags, bool with_trials) {
  cmd->add_option("--channel", flags->channel, "bsc|gauss|file:<path>");
  cmd->add_option("--delta", flags->delta, "BSC flip probability");
  cmd->add_option("--sigma", flags->sigma, "Gaussian channel noise std");
  cmd->add_option("--experts", flags->experts, "comma-separated constant expert values");
  cmd->add_option("--target", flags->target, "zeros|ones|random|greedy|file:<path>");
  cmd->add_option("--n", flags->n, "horizon");
  cmd->add_option("--seed", flags->seed, "base seed");
  cmd->add_option("--eta", flags->eta, "auto or a positive real");
  cmd->add_option("--out", flags->out, "output file path");
  if (with_trials) {
    cmd->add_option("--trials", flags->trials, "Monte Carlo trials");
    cmd->add_option("--threads", flags->threads, "worker threads (results identical regardless)");
  }
  cmd->add_option("--config", flags->config, "flat key=value file mirroring the flags");
}

// Splices `key=value` lines from a --config file into the argument list as
// `--key value` pairs, right after the subcommand token. Keys the user
// already passed on the command line are skipped, so explicit flags win.
std::vector<std::string> expand_config_args(std::vector<std::string> args) {
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    }
  }
  if (config_path.empty()) return args;

  std::size_t subcommand_pos = args.size();
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!args[i].empty() && args[i][0] != '-') {
      subcommand_pos = i;
      break;
    }
  }
  if (subcommand_pos == args.size()) return args;  // no subcommand; parse will complain

  std::ifstream in(config_path);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + config_path);
  }
  std::vector<std::string> inserted;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.pop_back();
    }
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::runtime_error(config_path + ":" + std::to_string(lineno) +
                               ": expected key=value");
    }
    const std::string key = line.substr(0, eq);
    const std::string flag = "--" + key;
    bool user_passed = false;
    for (const std::string& a : args) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) {
        user_passed = true;
        break;
      }
    }
    if (user_passed || key == "config") continue;
    inserted.push_back(flag);
    inserted.push_back(line.substr(eq + 1));
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(subcommand_pos) + 1, inserted.begin(),
              inserted.end());
  return args;
}

ssi::ExperimentConfig make_config(const CommonFlags& flags) {
  ssi::ExperimentConfig config{
      ssi::parse_channel_spec(flags.channel, flags.delta, flags.sigma),
      ssi::ExpertClass::constant(ssi::parse_expert_values(flags.experts)),
      ssi::TargetSpec::parse(flags.target)};
  config.n = flags.n;
  config.trials = flags.trials;
  config.seed = flags.seed;
  config.eta = ssi::parse_eta(flags.eta);
  config.out_path = flags.out;
  config.threads = flags.threads;
  return config;
}

void write_or_print(const std::string& out_path, const std::string& text) {
  std::cout << text;
  if (!out_path.empty()) {
    ssi::write_text_file(out_path, text);
  }
}

std::string sequence_to_string(const ssi::TargetSequence& target) {
  std::string s;
  s.reserve(target.size());
  for (std::size_t t = 0; t < target.size(); ++t) {
    s += static_cast<char>('0' + target[t].value());
  }
  return s;
}

int run_oracle(const CommonFlags& flags, const std::string& mode, std::size_t max_n) {
  const ssi::ChannelSpec channel = ssi::parse_channel_spec(flags.channel, flags.delta, flags.sigma);
  std::ostringstream os;
  if (mode == "xi-star") {
    const double closed = ssi::xi_star(channel);
    const double oracle = ssi::xi_star_oracle(channel);
    os << "xi_star=" << ssi::format_real(closed) << "\n"
       << "xi_star_oracle=" << ssi::format_real(oracle) << "\n"
       << "abs_diff=" << ssi::format_real(std::abs(closed - oracle)) << "\n";
    write_or_print(flags.out, os.str());
    return 0;
  }

  const ssi::ExpertClass experts = ssi::ExpertClass::constant(ssi::parse_expert_values(flags.experts));
  const std::optional<double> eta = ssi::parse_eta(flags.eta);
  if (mode == "exact") {
    const ssi::TargetSpec spec = ssi::TargetSpec::parse(flags.target);
    ssi::TargetSequence target = ssi::TargetSequence::zeros(flags.n);
    if (spec.kind == ssi::TargetKind::Ones) {
      target = ssi::TargetSequence::ones(flags.n);
    } else if (spec.kind == ssi::TargetKind::File) {
      target = ssi::TargetSequence::from_file(spec.path);
    } else if (spec.kind != ssi::TargetKind::Zeros) {
      throw std::invalid_argument("oracle exact: target must be zeros|ones|file:<path>");
    }
    const double regret = ssi::exact_expected_regret(channel, experts, target, eta, max_n);
    os << "target=" << sequence_to_string(target) << "\n"
       << "expected_regret=" << ssi::format_real(regret) << "\n";
  } else if (mode == "minimax") {
    const ssi::ExactRegretResult result =
        ssi::minimax_regret_bruteforce(channel, experts, flags.n, eta, max_n);
    os << "minimax_expected_regret=" << ssi::format_real(result.expected_regret) << "\n"
       << "worst_target=" << sequence_to_string(result.worst_target) << "\n"
       << "enumerated_paths=" << result.enumerated_paths << "\n";
  } else if (mode == "greedy") {
    std::mt19937_64 rng = ssi::make_stream_rng(flags.seed, 0);
    const ssi::TargetSequence target =
        ssi::greedy_adversary(channel, experts, flags.n, eta, rng);
    os << "greedy_target=" << sequence_to_string(target) << "\n";
  } else {
    throw std::invalid_argument("unknown oracle mode '" + mode +
                                "' (expected exact|minimax|greedy|xi-star)");
  }
  write_or_print(flags.out, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online prediction with expert advice and stochastic side information"};
  app.require_subcommand(1);

  CommonFlags run_flags, verify_flags, sweep_flags, oracle_flags;
  std::string sweep_param;
  std::string sweep_values = "";
  std::string oracle_mode = "xi-star";
  std::size_t oracle_max_n = 0;
  std::string plot_csv, plot_out;

  CLI::App* cmd_run = app.add_subcommand("run", "Monte Carlo regret experiment; writes a CSV");
  add_common_flags(cmd_run, &run_flags, true);

  CLI::App* cmd_verify = app.add_subcommand(
      "verify-bounds", "run + closed-form corollary bounds; exit 2 when a bound check fails");
  add_common_flags(cmd_verify, &verify_flags, true);

  CLI::App* cmd_sweep = app.add_subcommand("sweep", "repeat run over a parameter grid");
  add_common_flags(cmd_sweep, &sweep_flags, true);
  cmd_sweep->add_option("--param", sweep_param, "delta|sigma|n|trials|eta")->required();
  cmd_sweep->add_option("--values", sweep_values, "comma-separated values")->required();

  CLI::App* cmd_oracle =
      app.add_subcommand("oracle", "exact enumeration / xi* / greedy adversary");
  add_common_flags(cmd_oracle, &oracle_flags, false);
  cmd_oracle->add_option("--mode", oracle_mode, "exact|minimax|greedy|xi-star");
  cmd_oracle->add_option("--max-n", oracle_max_n,
                         "override the enumeration cap (warning above the default)");

  CLI::App* cmd_plot = app.add_subcommand("plot", "render a CSV produced by run/sweep as SVG");
  cmd_plot->add_option("csv", plot_csv, "input CSV")->required();
  cmd_plot->add_option("--out", plot_out, "output SVG path")->required();

  try {
    std::vector<std::string> args =
        expand_config_args(std::vector<std::string>(argv + 1, argv + argc));
    std::reverse(args.begin(), args.end());  // App::parse consumes reversed args
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (cmd_run->parsed()) {
      const ssi::RegretReport report = ssi::run_experiment(make_config(run_flags));
      std::cout << ssi::report_to_text(report);
      if (!run_flags.out.empty()) std::cout << "csv written to " << run_flags.out << "\n";
      return 0;
    }
    if (cmd_verify->parsed()) {
      const ssi::RegretReport report = ssi::verify_bounds(make_config(verify_flags));
      std::cout << ssi::report_to_text(report);
      if (report.upper) std::cout << report.upper->to_key_value();
      if (report.lower) std::cout << report.lower->to_key_value();
      if (!report.all_checks_pass()) {
        std::cerr << "bound verification FAILED\n";
        return 2;
      }
      return 0;
    }
    if (cmd_sweep->parsed()) {
      const auto values = ssi::parse_expert_values(sweep_values);  // plain comma-separated reals
      const auto reports = ssi::sweep(make_config(sweep_flags), sweep_param, values);
      for (std::size_t i = 0; i < reports.size(); ++i) {
        std::cout << sweep_param << "=" << ssi::format_real(values[i]) << " mean_regret="
                  << ssi::format_real(reports[i].mean_regret) << " ci95_half="
                  << ssi::format_real(reports[i].ci95_half) << "\n";
      }
      if (!sweep_flags.out.empty()) std::cout << "csv written to " << sweep_flags.out << "\n";
      return 0;
    }
    if (cmd_oracle->parsed()) {
      const std::size_t max_n =
          oracle_max_n > 0 ? oracle_max_n
                           : (oracle_mode == "minimax" ? ssi::kMinimaxDefaultCap
                                                       : ssi::kExactRegretDefaultCap);
      return run_oracle(oracle_flags, oracle_mode, max_n);
    }
    if (cmd_plot->parsed()) {
      ssi::emit_plot(plot_csv, plot_out);
      std::cout << "svg written to " << plot_out << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
