/*
 * This file is part of memchan.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

// memchan: quantum memory-channel simulator CLI.
//
// Machine-readable JSON goes to stdout; a short human summary goes to stderr.
// Exit codes: 0 = success / check passed, 1 = check failed, 2 = usage or
// input error. All commands are deterministic given their inputs and --seed.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "memchan/memchan.hpp"

namespace {

using namespace memchan;

constexpr uint64_t kDefaultSeed = 0xC0FFEE;

void emit(const std::string& json_text, const std::string& out_path) {
  std::cout << json_text << "\n";
  if (!out_path.empty()) {
    jsonio::write_text_file(out_path, json_text + "\n");
  }
}

DensityOperator fixed_probe_state(const std::string& path) {
  if (path.empty()) return DensityOperator::maximally_mixed(2);
  return DensityOperator(jsonio::parse_matrix(jsonio::read_text_file(path)));
}

InputSource make_input_source(const std::string& name,
                              const std::string& fixed_path, uint64_t seed,
                              Eigen::Index dim_s) {
  if (name == "random") return InputSource::seeded_random(seed);
  if (name == "worst") return InputSource::worst_of_set();
  if (name == "fixed") {
    if (fixed_path.empty()) {
      return InputSource::fixed_state(DensityOperator::maximally_mixed(dim_s));
    }
    return InputSource::fixed_state(fixed_probe_state(fixed_path));
  }
  throw precondition_error("unknown input source: " + name);
}

struct CliOptions {
  std::string device_path, target_path, channel_path, spec_path,
      transcript_path, input_path, out_path;
  std::string input_source = "random";
  std::string mode = "exact";
  uint64_t seed = kDefaultSeed;
  int n = 50;
  int shots = 100;
  long mem_dim = 2;
  long audit_mem_dim = 0;  // 0: take the transcript's memory dimension
  double threshold = 1e-8;
};

int cmd_demo_swap(const CliOptions& opt) {
  Cvec ground(2);
  ground << 1.0, 0.0;
  const MemoryDevice dev = swap_device(DensityOperator::pure(ground));
  const TomographyMode mode =
      opt.mode == "sampled" ? TomographyMode::sampled : TomographyMode::exact;
  const StrategyComparison cmp =
      compare_strategies(dev, opt.shots, opt.seed, mode);
  emit(jsonio::strategy_comparison_json(cmp, {"demo-swap", opt.seed}),
       opt.out_path);
  std::cerr << "demo-swap: N=" << opt.shots << " " << opt.mode
            << " | sequential dist-to-identity "
            << jsonio::format_real(cmp.sequential.dist_to_identity)
            << " | randomized dist-to-depolarizing "
            << jsonio::format_real(cmp.randomized.dist_to_depolarizing)
            << " | inter-estimate "
            << jsonio::format_real(cmp.inter_estimate_distance) << "\n";
  return 0;
}

int cmd_repeat_check(const CliOptions& opt) {
  const MemoryDevice dev =
      jsonio::parse_device(jsonio::read_text_file(opt.device_path));
  const KrausChannel target =
      jsonio::parse_channel(jsonio::read_text_file(opt.target_path));
  const InputSource source = make_input_source(opt.input_source, opt.input_path,
                                               opt.seed, dev.dim_system());
  const RepeatabilityReport report =
      check_repeatable(dev, target, opt.n, source, opt.threshold);
  emit(jsonio::repeatability_report_json(report, {"repeat-check", opt.seed}),
       opt.out_path);
  if (report.first_deviating_step) {
    std::cerr << "repeat-check: FAILED at step " << *report.first_deviating_step
              << " (max deviation "
              << jsonio::format_real(report.max_choi_deviation) << ")\n";
    return 1;
  }
  std::cerr << "repeat-check: ok, " << opt.n << " steps, max deviation "
            << jsonio::format_real(report.max_choi_deviation) << "\n";
  return 0;
}

int cmd_bound(const CliOptions& opt) {
  const KrausChannel ch =
      jsonio::parse_channel(jsonio::read_text_file(opt.channel_path));
  const BoundReport report = repeatability_bound(ch, opt.mem_dim);
  emit(jsonio::bound_report_json(report, {"bound", opt.seed}), opt.out_path);
  std::cerr << "bound: delta(I/d) "
            << jsonio::format_real(report.delta_at_mixture) << ", n_max ";
  if (report.n_max_mixture) {
    std::cerr << *report.n_max_mixture;
  } else {
    std::cerr << "unbounded";
  }
  std::cerr << "\n";
  return 0;
}

int cmd_dilate(const CliOptions& opt) {
  const std::string text = jsonio::read_text_file(opt.spec_path);
  const RandomUnitarySpec spec = jsonio::parse_random_unitary_spec(text);
  const std::optional<Cmat> memory = jsonio::parse_spec_memory(text);
  const MemoryDevice dev = controlled_u_device(spec, memory);
  const jsonio::CommandEcho echo{"dilate", opt.seed};
  emit(jsonio::device_json(dev, &echo), opt.out_path);
  std::cerr << "dilate: controlled-U device, dim_m=" << dev.dim_memory()
            << " dim_s=" << dev.dim_system() << "\n";
  return 0;
}

int cmd_transcript(const CliOptions& opt) {
  const MemoryDevice dev =
      jsonio::parse_device(jsonio::read_text_file(opt.device_path));
  std::vector<DensityOperator> inputs;
  if (!opt.input_path.empty()) {
    const DensityOperator rho(
        jsonio::parse_matrix(jsonio::read_text_file(opt.input_path)));
    inputs.assign(static_cast<size_t>(opt.n), rho);
  } else {
    Rng rng(opt.seed);
    for (int k = 0; k < opt.n; ++k) {
      inputs.push_back(random_density(dev.dim_system(), rng));
    }
  }
  const UsageTranscript t = run_sequence(dev, inputs);
  const jsonio::CommandEcho echo{"transcript", opt.seed};
  emit(jsonio::transcript_json(t, &echo), opt.out_path);
  std::cerr << "transcript: " << opt.n << " uses recorded\n";
  return 0;
}

int cmd_entropy_audit(const CliOptions& opt) {
  const UsageTranscript t =
      jsonio::parse_transcript(jsonio::read_text_file(opt.transcript_path));
  const Eigen::Index mem_dim = opt.audit_mem_dim > 0
                                   ? static_cast<Eigen::Index>(opt.audit_mem_dim)
                                   : t.dim_memory;
  const EntropyChainReport report = entropy_chain_check(t, mem_dim);
  emit(jsonio::entropy_chain_report_json(report, {"entropy-audit", opt.seed}),
       opt.out_path);
  if (!report.passed) {
    std::cerr << "entropy-audit: FAILED at prefix " << *report.violated_prefix
              << "\n";
    return 1;
  }
  std::cerr << "entropy-audit: ok, " << report.steps << " steps within "
            << jsonio::format_real(report.bound_bits) << " bits\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("MEMCHAN_TOLERANCE")) {
    try {
      memchan::set_default_tolerance(std::stod(env));
    } catch (const std::exception&) {
      std::cerr << "invalid MEMCHAN_TOLERANCE value: " << env << "\n";
      return 2;
    }
  }

  CLI::App app{"memchan: unitary memory-channel simulation and checks"};
  app.require_subcommand(1);
  CliOptions opt;

  CLI::App* demo = app.add_subcommand(
      "demo-swap", "six-probe tomography of the SWAP device, both orderings");
  demo->add_option("--shots", opt.shots, "probe repetitions N")
      ->check(CLI::PositiveNumber);
  demo->add_option("--seed", opt.seed, "RNG seed (echoed in output)");
  demo->add_option("--mode", opt.mode, "exact | sampled")
      ->check(CLI::IsMember({"exact", "sampled"}));
  demo->add_option("--out", opt.out_path, "also write the JSON report here");

  CLI::App* repeat = app.add_subcommand(
      "repeat-check", "drive a device n times and compare against a target");
  repeat->add_option("device", opt.device_path, "device JSON file")->required();
  repeat->add_option("target", opt.target_path, "target channel JSON file")
      ->required();
  repeat->add_option("--n", opt.n, "number of uses")->check(CLI::PositiveNumber);
  repeat->add_option("--seed", opt.seed, "RNG seed");
  repeat->add_option("--threshold", opt.threshold, "Choi deviation threshold");
  repeat->add_option("--input-source", opt.input_source,
                     "random | worst | fixed");
  repeat->add_option("--fixed-input", opt.input_path,
                     "state JSON for --input-source fixed (default I/d)");
  repeat->add_option("--out", opt.out_path, "also write the JSON report here");

  CLI::App* bound = app.add_subcommand(
      "bound", "entropy bound on n-repeatability for a channel");
  bound->add_option("channel", opt.channel_path, "channel JSON file")
      ->required();
  bound->add_option("--mem-dim", opt.mem_dim, "memory dimension")
      ->check(CLI::PositiveNumber);
  bound->add_option("--out", opt.out_path, "also write the JSON report here");

  CLI::App* dilate = app.add_subcommand(
      "dilate", "controlled-U device for a random unitary channel spec");
  dilate->add_option("spec", opt.spec_path, "spec JSON file")->required();
  dilate->add_option("--out", opt.out_path, "also write the device JSON here");

  CLI::App* transcript = app.add_subcommand(
      "transcript", "run a device and export the usage transcript");
  transcript->add_option("device", opt.device_path, "device JSON file")
      ->required();
  transcript->add_option("--n", opt.n, "number of uses")
      ->check(CLI::PositiveNumber);
  transcript->add_option("--seed", opt.seed, "RNG seed for random inputs");
  transcript->add_option("--input", opt.input_path,
                         "state JSON fed at every step (default: seeded random)");
  transcript->add_option("--out", opt.out_path, "also write the transcript here");

  CLI::App* audit = app.add_subcommand(
      "entropy-audit", "check the accumulated entropy chain of a transcript");
  audit->add_option("transcript", opt.transcript_path, "transcript JSON file")
      ->required();
  audit->add_option("--mem-dim", opt.audit_mem_dim,
                    "memory dimension (default: from the transcript)")
      ->check(CLI::PositiveNumber);
  audit->add_option("--out", opt.out_path, "also write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (demo->parsed()) return cmd_demo_swap(opt);
    if (repeat->parsed()) return cmd_repeat_check(opt);
    if (bound->parsed()) return cmd_bound(opt);
    if (dilate->parsed()) return cmd_dilate(opt);
    if (transcript->parsed()) return cmd_transcript(opt);
    if (audit->parsed()) return cmd_entropy_audit(opt);
  } catch (const memchan::jsonio::parse_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const memchan::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
