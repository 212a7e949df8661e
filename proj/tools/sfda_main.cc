/* Copyright 2026 The ssvep-sfda Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// sfda: synthetic data, pre-training, adaptation and evaluation runs.
//
// Exit status: 0 success, 1 runtime or data error, 2 usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sfda/adapt.hpp"
#include "sfda/checkpoint.hpp"
#include "sfda/dataset.hpp"
#include "sfda/errors.hpp"
#include "sfda/loo.hpp"
#include "sfda/rng.hpp"
#include "sfda/serialization.hpp"
#include "sfda/synth.hpp"

namespace fs = std::filesystem;
using sfda::ExperimentConfig;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

fs::path manifest_path(const fs::path& data) {
  return fs::is_directory(data) ? data / "manifest.json" : data;
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw sfda::IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

std::string join(const std::vector<double>& v) {
  std::string s;
  char buf[32];
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%g", v[i]);
    s += (i ? "," : "") + std::string(buf);
  }
  return s;
}

// Flags shared by commands that read an experiment config. Each flag is only
// applied when given, so config values survive unless overridden.
struct ConfigFlags {
  std::string config;
  ExperimentConfig defaults;
  ExperimentConfig flags;  // holds parsed flag values
  std::vector<std::pair<CLI::Option*, std::function<void(ExperimentConfig&)>>> overrides;

  template <typename T>
  void add(CLI::App* app, const std::string& name, T& slot, const std::string& help,
           std::function<void(ExperimentConfig&)> apply) {
    overrides.emplace_back(app->add_option(name, slot, help)->capture_default_str(), std::move(apply));
  }

  ExperimentConfig resolve() const {
    ExperimentConfig cfg = config.empty() ? ExperimentConfig{} : sfda::load_experiment_config(config);
    for (const auto& [opt, apply] : overrides) {
      if (opt->count() > 0) apply(cfg);
    }
    cfg.validate();
    return cfg;
  }
};

void add_config_flag(CLI::App* app, ConfigFlags& f) {
  app->add_option("--config", f.config, "Experiment config (JSON); flags override its values")
      ->check(CLI::ExistingFile);
}

void add_training_flags(CLI::App* app, ConfigFlags& f) {
  auto& t = f.flags.training;
  f.add(app, "--epochs", t.epochs, "Pre-training epochs", [&t](ExperimentConfig& c) { c.training.epochs = t.epochs; });
  f.add(app, "--batch-size", t.batch_size, "Mini-batch size",
        [&t](ExperimentConfig& c) { c.training.batch_size = t.batch_size; });
  f.add(app, "--lr", t.learning_rate, "Pre-training learning rate",
        [&t](ExperimentConfig& c) { c.training.learning_rate = t.learning_rate; });
  f.add(app, "--train-seed", t.seed, "Pre-training seed", [&t](ExperimentConfig& c) { c.training.seed = t.seed; });
  f.add(app, "--filters", f.flags.arch.n_filters, "Convolution filters per layer",
        [&f](ExperimentConfig& c) { c.arch.n_filters = f.flags.arch.n_filters; });
}

void add_adaptation_flags(CLI::App* app, ConfigFlags& f) {
  auto& a = f.flags.adaptation;
  f.add(app, "--alpha", a.learning_rate, "Adaptation step size",
        [&a](ExperimentConfig& c) { c.adaptation.learning_rate = a.learning_rate; });
  f.add(app, "--beta", a.beta, "L2 weight", [&a](ExperimentConfig& c) { c.adaptation.beta = a.beta; });
  f.add(app, "--max-stalled", a.max_stalled, "Stalled trials before stopping (B)",
        [&a](ExperimentConfig& c) { c.adaptation.max_stalled = a.max_stalled; });
  f.add(app, "--adapt-epochs", a.epochs, "Gradient steps per trial (J)",
        [&a](ExperimentConfig& c) { c.adaptation.epochs = a.epochs; });
  app->add_option("--lambda-grid", a.lambda_grid, "Lambda values")
      ->delimiter(',')
      ->default_str(join(a.lambda_grid));
  f.overrides.emplace_back(app->get_option("--lambda-grid"),
                           [&a](ExperimentConfig& c) { c.adaptation.lambda_grid = a.lambda_grid; });
  f.add(app, "--delta", a.delta, "Neighbor drop threshold", [&a](ExperimentConfig& c) { c.adaptation.delta = a.delta; });
  f.add(app, "--k-max", a.k_max, "Neighbor cap, <= 0 derives it from N and the class count",
        [&a](ExperimentConfig& c) { c.adaptation.k_max = a.k_max; });
  f.add(app, "--max-iterations", a.max_iterations, "Accepted iterations per lambda, <= 0 for no cap",
        [&a](ExperimentConfig& c) { c.adaptation.max_iterations = a.max_iterations; });
  f.add(app, "--adapt-seed", a.seed, "Adaptation seed", [&a](ExperimentConfig& c) { c.adaptation.seed = a.seed; });
  f.add(app, "--threads", a.threads, "Lambda runs in parallel",
        [&a](ExperimentConfig& c) { c.adaptation.threads = a.threads; });
}

void log_stderr(const std::string& s) { std::cerr << s << '\n'; }

// --- synth -----------------------------------------------------------------

struct SynthArgs {
  sfda::SynthConfig cfg;
  double fs = 250.0;
  double duration = 1.0;
  std::string out;
};

void setup_synth(CLI::App& root, SynthArgs& a) {
  auto* app = root.add_subcommand("synth", "Write a synthetic dataset");
  app->add_option("--participants", a.cfg.n_participants, "Participants")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--blocks", a.cfg.n_blocks, "Blocks per participant")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--fs", a.fs, "Sampling rate (Hz)")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--duration", a.duration, "Stimulation window after the response latency (s)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app->add_option("--snr-db", a.cfg.snr_db, "Per-row signal to noise ratio (dB)")->capture_default_str();
  app->add_option("--mixing", a.cfg.mixing_strength, "Participant mixing strength")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  app->add_option("--latency-spread", a.cfg.latency_spread, "Latency spread (s)")->capture_default_str();
  app->add_option("--seed", a.cfg.seed, "Seed")->capture_default_str();
  app->add_option("--out", a.out, "Output directory")->required();
}

int run_synth(const SynthArgs& a) {
  a.cfg.validate();
  const ExperimentConfig defaults;
  // Room for the default response latency plus a small margin.
  const double epoch = a.duration + defaults.eval.latency + 0.02;
  const sfda::Dataset ds = sfda::synth_dataset(a.cfg, sfda::StimulusTable::benchmark40(), a.fs, epoch);
  const fs::path manifest = sfda::write_dataset(ds, a.out);
  std::printf("wrote %zu trials from %zu participants to %s\n", ds.trial_count(), ds.participant_count(),
              manifest.string().c_str());
  return 0;
}

// --- pretrain --------------------------------------------------------------

struct PretrainArgs {
  std::string data;
  std::string exclude;
  std::string out;
  double duration = 1.0;
  ConfigFlags cfg;
};

void setup_pretrain(CLI::App& root, PretrainArgs& a) {
  auto* app = root.add_subcommand("pretrain", "Pre-train on labeled source participants");
  app->add_option("--data", a.data, "Dataset manifest or directory")->required();
  app->add_option("--exclude", a.exclude, "Participant left out of training");
  app->add_option("--out", a.out, "Output directory")->required();
  app->add_option("--duration", a.duration, "Window length (s)")->capture_default_str()->check(CLI::PositiveNumber);
  add_config_flag(app, a.cfg);
  add_training_flags(app, a.cfg);
}

int run_pretrain(const PretrainArgs& a) {
  const ExperimentConfig cfg = a.cfg.resolve();
  const sfda::Dataset ds = sfda::Dataset::open(manifest_path(a.data));
  if (!a.exclude.empty() && !ds.participant_index(a.exclude)) {
    throw sfda::DataError("unknown participant '" + a.exclude + "'");
  }
  std::vector<sfda::PreparedParticipant> prepared;
  for (std::size_t p = 0; p < ds.participant_count(); ++p) {
    if (ds.participant(p).id != a.exclude) prepared.push_back(sfda::prepare_participant(ds, p, cfg));
  }
  std::vector<const sfda::PreparedParticipant*> sources;
  for (const auto& p : prepared) sources.push_back(&p);
  const sfda::LabeledSet set = sfda::labeled_windows(sources, cfg.eval.latency, a.duration);
  if (set.inputs.empty()) throw sfda::DataError("no labeled source trials");
  const sfda::Architecture arch = sfda::fold_architecture(cfg, set.inputs.front().n_channels,
                                                          set.inputs.front().n_samples,
                                                          ds.manifest().stimulus.size());
  const sfda::PretrainResult r = sfda::pretrain(set, arch, cfg.training);

  fs::create_directories(a.out);
  sfda::checkpoint_save(r.params, fs::path(a.out) / "pretrained.ckpt");
  write_json(fs::path(a.out) / "pretrain_trace.json",
             {{"participants", prepared.size()},
              {"trials", set.inputs.size()},
              {"training", cfg.training},
              {"architecture", arch},
              {"loss", r.loss_trace},
              {"train_accuracy", sfda::accuracy(r.params, set)}});
  std::printf("trained on %zu trials from %zu participants; checkpoint %s\n", set.inputs.size(), prepared.size(),
              (fs::path(a.out) / "pretrained.ckpt").string().c_str());
  return 0;
}

// --- adapt -----------------------------------------------------------------

struct AdaptArgs {
  std::string data;
  std::string target;
  std::string ckpt;
  std::string out;
  double duration = 1.0;
  ConfigFlags cfg;
};

void setup_adapt(CLI::App& root, AdaptArgs& a) {
  auto* app = root.add_subcommand("adapt", "Adapt a checkpoint to one participant's unlabeled trials");
  app->add_option("--data", a.data, "Dataset manifest or directory")->required();
  app->add_option("--target", a.target, "Target participant")->required();
  app->add_option("--ckpt", a.ckpt, "Pre-trained checkpoint")->required()->check(CLI::ExistingFile);
  app->add_option("--out", a.out, "Output directory")->required();
  app->add_option("--duration", a.duration, "Window length (s)")->capture_default_str()->check(CLI::PositiveNumber);
  add_config_flag(app, a.cfg);
  add_adaptation_flags(app, a.cfg);
}

int run_adapt(const AdaptArgs& a) {
  const ExperimentConfig cfg = a.cfg.resolve();
  const sfda::Dataset ds = sfda::Dataset::open(manifest_path(a.data));
  const auto idx = ds.participant_index(a.target);
  if (!idx) throw sfda::DataError("unknown target participant '" + a.target + "'");
  const sfda::PreparedParticipant tp = sfda::prepare_participant(ds, *idx, cfg);
  const auto bands = sfda::crop_bands(tp, cfg.eval.latency, a.duration);
  const sfda::NetworkParams params0 = sfda::checkpoint_load(a.ckpt);
  const auto& arch = params0.arch();
  if (arch.n_subbands != bands.front().n_subbands || arch.n_channels != bands.front().n_channels ||
      arch.n_samples != bands.front().n_samples || arch.n_classes != ds.manifest().stimulus.size()) {
    throw sfda::DataError("checkpoint input shape does not match the target windows");
  }
  const sfda::AdaptationResult r = sfda::adapt(params0, bands, cfg.adaptation, ds.manifest().stimulus, cfg.fbcca);

  fs::create_directories(a.out);
  sfda::checkpoint_save(r.params(), fs::path(a.out) / "adapted.ckpt");
  nlohmann::json trace = sfda::adaptation_trace_json(r);
  trace["participant"] = a.target;
  trace["labels"] = r.labels();
  write_json(fs::path(a.out) / "adaptation_trace.json", trace);
  std::printf("adapted %s: lambda_max %g, score %.4f after %d iterations\n", a.target.c_str(), r.lambda_max(),
              r.runs[static_cast<std::size_t>(r.best)].final_score(), r.runs[static_cast<std::size_t>(r.best)].iterations());
  return 0;
}

// --- eval ------------------------------------------------------------------

struct EvalArgs {
  std::string data;
  std::string report_dir;
  std::string cache_dir;
  std::vector<std::string> methods;
  bool quiet = false;
  ConfigFlags cfg;
};

void setup_eval(CLI::App& root, EvalArgs& a) {
  auto* app = root.add_subcommand("eval", "Leave-one-participant-out evaluation");
  app->add_option("--data", a.data, "Dataset manifest or directory");
  app->add_option("--report-dir", a.report_dir, "Output directory")->required();
  app->add_option("--cache-dir", a.cache_dir, "Pre-trained checkpoint cache");
  app->add_flag("--quiet", a.quiet, "No progress on stderr");
  auto& e = a.cfg.flags.eval;
  std::vector<std::string> method_names;
  for (const auto m : e.methods) method_names.push_back(sfda::to_string(m));
  a.methods = method_names;
  auto* methods = app->add_option("--methods", a.methods, "Methods: sfda, fbcca, standard_cca, dnn_transfer_only")
                      ->delimiter(',')
                      ->capture_default_str();
  a.cfg.overrides.emplace_back(methods, [&a](ExperimentConfig& c) {
    c.eval.methods.clear();
    for (const auto& m : a.methods) c.eval.methods.push_back(sfda::method_from_string(m));
  });
  app->add_option("--durations", e.durations, "Window lengths (s)")->delimiter(',')->default_str(join(e.durations));
  a.cfg.overrides.emplace_back(app->get_option("--durations"),
                               [&e](ExperimentConfig& c) { c.eval.durations = e.durations; });
  app->add_option("--targets", e.targets, "Held-out participants (default all)")->delimiter(',');
  a.cfg.overrides.emplace_back(app->get_option("--targets"), [&e](ExperimentConfig& c) { c.eval.targets = e.targets; });
  a.cfg.add(app, "--jobs", e.jobs, "Folds in parallel", [&e](ExperimentConfig& c) { c.eval.jobs = e.jobs; });
  a.cfg.add(app, "--seed", e.seed, "Evaluation seed", [&e](ExperimentConfig& c) { c.eval.seed = e.seed; });
  add_config_flag(app, a.cfg);
  add_training_flags(app, a.cfg);
  add_adaptation_flags(app, a.cfg);
}

int run_eval(const EvalArgs& a) {
  const ExperimentConfig cfg = a.cfg.resolve();
  fs::path data = a.data.empty() ? fs::path(cfg.data) : fs::path(a.data);
  if (data.empty()) throw sfda::ArgumentError("no dataset: pass --data or set \"data\" in the config");
  const sfda::Dataset ds = sfda::Dataset::open(manifest_path(data));
  sfda::LooOptions opt;
  opt.cache_dir = a.cache_dir;
  if (!a.quiet) opt.log = log_stderr;
  const sfda::EvalReport r = sfda::run_loo(ds, cfg, opt);
  sfda::write_report(r, a.report_dir);
  for (const auto& g : r.aggregates) {
    std::printf("%-18s T=%.2fs  accuracy %.4f +- %.4f  itr %.2f +- %.2f bits/min\n", sfda::to_string(g.method).c_str(),
                g.duration, g.mean_accuracy, g.se_accuracy, g.mean_itr, g.se_itr);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Source-free adaptation of SSVEP classifiers"};
  app.require_subcommand(1);
  SynthArgs synth;
  PretrainArgs pretrain;
  AdaptArgs adapt;
  EvalArgs eval;
  setup_synth(app, synth);
  setup_pretrain(app, pretrain);
  setup_adapt(app, adapt);
  setup_eval(app, eval);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand("synth")) return run_synth(synth);
    if (app.got_subcommand("pretrain")) return run_pretrain(pretrain);
    if (app.got_subcommand("adapt")) return run_adapt(adapt);
    return run_eval(eval);
  } catch (const sfda::ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
