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

#include "sfda/loo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <thread>

#include <nlohmann/json.hpp>

#include "sfda/checkpoint.hpp"
#include "sfda/errors.hpp"
#include "sfda/metrics.hpp"
#include "sfda/rng.hpp"
#include "sfda/serialization.hpp"
#include "sfda/stats.hpp"

namespace sfda {

namespace {

// 64-bit FNV-1a.
class Fnv1a {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h_ ^= p[i];
      h_ *= 0x100000001b3ULL;
    }
  }
  void text(const std::string& s) { bytes(s.data(), s.size()); }
  template <typename T>
  void value(T v) {
    unsigned char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    bytes(buf, sizeof(T));
  }
  std::uint64_t digest() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void log_line(const LogFn& log, const std::string& s) {
  if (log) log(s);
}

struct FoldOutput {
  std::vector<EvalRecord> records;
  std::vector<LambdaTriple> lambdas;
  std::vector<FoldAdaptation> adaptations;
};

bool has(const std::vector<Method>& ms, Method m) { return std::find(ms.begin(), ms.end(), m) != ms.end(); }

bool needs_network(const std::vector<Method>& ms) {
  return has(ms, Method::kSfda) || has(ms, Method::kDnnTransferOnly);
}

FoldOutput run_fold(const std::vector<PreparedParticipant>& prepared, std::size_t target,
                    const Dataset& data, const ExperimentConfig& cfg, const LooOptions& options) {
  FoldOutput out;
  const PreparedParticipant& tp = prepared[target];
  std::vector<int> truth;
  truth.reserve(tp.labels.size());
  for (const auto& l : tp.labels) {
    if (!l) throw DataError("participant " + tp.id + " has unlabeled trials and cannot be scored");
    truth.push_back(*l);
  }
  std::vector<const PreparedParticipant*> sources;
  for (std::size_t p = 0; p < prepared.size(); ++p) {
    if (p != target) sources.push_back(&prepared[p]);
  }
  const StimulusTable& stimulus = data.manifest().stimulus;
  const int m = stimulus.size();
  const auto& methods = cfg.eval.methods;

  for (const double duration : cfg.eval.durations) {
    const double t_total = duration + cfg.eval.gaze_shift;
    const auto target_bands = crop_bands(tp, cfg.eval.latency, duration);
    auto record = [&](Method method, const std::vector<int>& predicted) {
      EvalRecord r;
      r.method = method;
      r.duration = duration;
      r.participant = tp.id;
      r.accuracy = accuracy(predicted, truth);
      const ItrValue v = itr_checked(r.accuracy, m, t_total);
      r.itr = v.bits_per_min;
      r.clamped = v.clamped;
      return r;
    };
    std::map<Method, EvalRecord> by_method;

    if (has(methods, Method::kStandardCca)) {
      std::vector<int> pred;
      for (const auto& trial : tp.trials) {
        const EegTrial w = crop_trial(trial, cfg.eval.latency, duration);
        pred.push_back(standard_cca_classify(w, stimulus, cfg.fbcca.n_harmonics).predicted);
      }
      by_method.emplace(Method::kStandardCca, record(Method::kStandardCca, pred));
    }
    if (has(methods, Method::kFbcca)) {
      std::vector<int> pred;
      for (const auto& x : target_bands) pred.push_back(fbcca_classify(x, stimulus, cfg.fbcca).predicted);
      by_method.emplace(Method::kFbcca, record(Method::kFbcca, pred));
    }
    if (needs_network(methods)) {
      const LabeledSet source = labeled_windows(sources, cfg.eval.latency, duration);
      const Architecture arch = fold_architecture(cfg, target_bands.front().n_channels,
                                                  target_bands.front().n_samples, m);
      TrainingConfig training = cfg.training;
      training.seed = mix_seed({cfg.eval.seed, cfg.training.seed});
      log_line(options.log, "fold " + tp.id + " T=" + fmt(duration) + "s: pre-training on " +
                                std::to_string(source.inputs.size()) + " trials");
      const NetworkParams params0 = pretrain_cached(source, arch, training, options.cache_dir, options.log);
      const std::vector<int> dnn_pred = predict_batch(params0, target_bands);
      if (has(methods, Method::kDnnTransferOnly)) {
        by_method.emplace(Method::kDnnTransferOnly, record(Method::kDnnTransferOnly, dnn_pred));
      }
      if (has(methods, Method::kSfda)) {
        AdaptationConfig acfg = cfg.adaptation;
        acfg.seed = mix_seed({cfg.eval.seed, cfg.adaptation.seed});
        FoldAdaptation fa;
        fa.participant = tp.id;
        fa.duration = duration;
        fa.result = adapt(params0, target_bands, acfg, stimulus, cfg.fbcca);
        fa.initial_accuracy = accuracy(fa.result.initial.labels, truth);
        for (auto& run : fa.result.runs) {
          fa.run_accuracy.push_back(accuracy(run.labels, truth));
          run.params = NetworkParams();
        }
        by_method.emplace(Method::kSfda, record(Method::kSfda, fa.result.labels()));

        LambdaTriple lt;
        lt.participant = tp.id;
        lt.duration = duration;
        lt.selected = fa.result.lambda_max();
        std::size_t best = 0;
        for (std::size_t i = 1; i < fa.run_accuracy.size(); ++i) {
          if (fa.run_accuracy[i] > fa.run_accuracy[best]) best = i;
        }
        lt.best = fa.result.runs[best].lambda;
        lt.gap = fa.run_accuracy[best] - fa.run_accuracy[static_cast<std::size_t>(fa.result.best)];
        out.lambdas.push_back(lt);
        log_line(options.log, "fold " + tp.id + " T=" + fmt(duration) + "s: lambda_max=" + fmt(lt.selected) +
                                  " initial=" + to_string(fa.result.initial.source) +
                                  " sfda acc=" + fmt(by_method.at(Method::kSfda).accuracy));
        out.adaptations.push_back(std::move(fa));
      }
    }
    for (const Method method : all_methods()) {
      const auto it = by_method.find(method);
      if (it != by_method.end()) out.records.push_back(it->second);
    }
  }
  return out;
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::kSfda:
      return "sfda";
    case Method::kFbcca:
      return "fbcca";
    case Method::kStandardCca:
      return "standard_cca";
    case Method::kDnnTransferOnly:
      return "dnn_transfer_only";
  }
  return "unknown";
}

Method method_from_string(const std::string& name) {
  for (const Method m : all_methods()) {
    if (to_string(m) == name) return m;
  }
  throw ArgumentError("unknown method '" + name + "' (expected sfda, fbcca, standard_cca or dnn_transfer_only)");
}

std::vector<Method> all_methods() {
  return {Method::kSfda, Method::kFbcca, Method::kStandardCca, Method::kDnnTransferOnly};
}

void EvalConfig::validate() const {
  if (durations.empty()) throw ArgumentError("no durations to evaluate");
  for (const double d : durations) {
    if (!(d > 0.0)) throw ArgumentError("durations must be positive");
  }
  if (!(gaze_shift >= 0.0)) throw ArgumentError("gaze shift must be non-negative");
  if (!(latency >= 0.0)) throw ArgumentError("latency must be non-negative");
  if (channel_subset.empty()) throw ArgumentError("channel subset is empty");
  if (methods.empty()) throw ArgumentError("no methods to evaluate");
  if (jobs < 1) throw ArgumentError("jobs must be >= 1");
}

void ExperimentConfig::validate() const {
  fbcca.validate();
  training.validate();
  adaptation.validate();
  eval.validate();
}

Architecture fold_architecture(const ExperimentConfig& cfg, int n_channels, int n_samples, int n_classes) {
  Architecture a = cfg.arch;
  a.n_subbands = cfg.fbcca.bank.n_subbands();
  a.n_channels = n_channels;
  a.n_samples = n_samples;
  a.n_classes = n_classes;
  a.validate();
  return a;
}

PreparedParticipant prepare_participant(const Dataset& data, std::size_t participant, const ExperimentConfig& cfg) {
  PreparedParticipant out;
  const ParticipantInfo& info = data.participant(participant);
  out.id = info.id;
  const int m = data.manifest().stimulus.size();
  for (std::size_t i = 0; i < info.trials.size(); ++i) {
    EegTrial t = select_channels(data.trial(participant, i), cfg.eval.channel_subset);
    t.validate(m);
    out.bands.push_back(filter_bank(t, cfg.fbcca.bank));
    out.labels.push_back(t.char_index);
    out.trials.push_back(std::move(t));
  }
  return out;
}

std::vector<SubBandTensor> crop_bands(const PreparedParticipant& p, double latency, double duration) {
  std::vector<SubBandTensor> out;
  out.reserve(p.bands.size());
  for (const auto& b : p.bands) out.push_back(crop_subbands(b, latency, duration));
  return out;
}

LabeledSet labeled_windows(std::span<const PreparedParticipant* const> sources, double latency, double duration) {
  LabeledSet set;
  for (const auto* p : sources) {
    for (std::size_t i = 0; i < p->bands.size(); ++i) {
      if (!p->labels[i]) continue;
      set.inputs.push_back(crop_subbands(p->bands[i], latency, duration));
      set.labels.push_back(*p->labels[i]);
    }
  }
  return set;
}

std::string pretrain_cache_key(const LabeledSet& data, const Architecture& arch, const TrainingConfig& cfg) {
  Fnv1a h;
  h.text(nlohmann::json(arch).dump());
  h.text(nlohmann::json(cfg).dump());
  h.value(static_cast<std::uint64_t>(data.inputs.size()));
  for (std::size_t i = 0; i < data.inputs.size(); ++i) {
    const auto& x = data.inputs[i];
    h.value(x.n_subbands);
    h.value(x.n_channels);
    h.value(x.n_samples);
    h.value(x.fs);
    h.bytes(x.data.data(), x.data.size() * sizeof(double));
    h.value(data.labels[i]);
  }
  return hex16(h.digest());
}

NetworkParams pretrain_cached(const LabeledSet& data, const Architecture& arch, const TrainingConfig& cfg,
                              const std::filesystem::path& cache_dir, const LogFn& log) {
  std::filesystem::path path;
  if (!cache_dir.empty()) {
    path = cache_dir / ("pretrain-" + pretrain_cache_key(data, arch, cfg) + ".ckpt");
    if (std::filesystem::exists(path)) {
      try {
        NetworkParams p = checkpoint_load(path);
        if (p.arch() == arch) {
          log_line(log, "loaded cached checkpoint " + path.string());
          return p;
        }
      } catch (const Error& e) {
        log_line(log, std::string("ignoring unreadable cache entry: ") + e.what());
      }
    }
  }
  NetworkParams params = pretrain(data, arch, cfg).params;
  if (!path.empty()) {
    std::filesystem::create_directories(cache_dir);
    const auto tmp = path.string() + ".tmp";
    checkpoint_save(params, tmp);
    std::filesystem::rename(tmp, path);
  }
  return params;
}

double EvalReport::mean_accuracy(Method m, double duration) const {
  for (const auto& a : aggregates) {
    if (a.method == m && a.duration == duration) return a.mean_accuracy;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

EvalReport run_loo(const Dataset& data, const ExperimentConfig& cfg, const LooOptions& options) {
  cfg.validate();
  const std::size_t n_participants = data.participant_count();
  if (n_participants < 2) throw DataError("leave-one-out needs at least 2 participants");

  std::vector<std::size_t> targets;
  if (cfg.eval.targets.empty()) {
    for (std::size_t p = 0; p < n_participants; ++p) targets.push_back(p);
  } else {
    for (const auto& id : cfg.eval.targets) {
      const auto idx = data.participant_index(id);
      if (!idx) throw DataError("unknown target participant '" + id + "'");
      targets.push_back(*idx);
    }
  }
  std::sort(targets.begin(), targets.end(), [&](std::size_t a, std::size_t b) {
    return data.participant(a).id < data.participant(b).id;
  });
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  std::vector<PreparedParticipant> prepared;
  prepared.reserve(n_participants);
  for (std::size_t p = 0; p < n_participants; ++p) prepared.push_back(prepare_participant(data, p, cfg));

  std::vector<FoldOutput> folds(targets.size());
  std::vector<std::exception_ptr> errors(targets.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < targets.size(); i = next++) {
      try {
        folds[i] = run_fold(prepared, targets[i], data, cfg, options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n_threads = std::min<int>(cfg.eval.jobs, static_cast<int>(targets.size()));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  EvalReport report;
  for (auto& f : folds) {
    report.records.insert(report.records.end(), f.records.begin(), f.records.end());
    report.lambdas.insert(report.lambdas.end(), f.lambdas.begin(), f.lambdas.end());
    for (auto& a : f.adaptations) report.adaptations.push_back(std::move(a));
  }

  auto values = [&](Method m, double duration, bool use_itr) {
    std::vector<double> v;
    for (const auto& r : report.records) {
      if (r.method == m && r.duration == duration) v.push_back(use_itr ? r.itr : r.accuracy);
    }
    return v;
  };
  const auto& methods = cfg.eval.methods;
  for (const double duration : cfg.eval.durations) {
    for (const Method m : all_methods()) {
      if (!has(methods, m)) continue;
      const auto acc = values(m, duration, false);
      const auto itrs = values(m, duration, true);
      Aggregate a;
      a.method = m;
      a.duration = duration;
      a.n = static_cast<int>(acc.size());
      a.mean_accuracy = mean(acc);
      a.se_accuracy = standard_error(acc);
      a.mean_itr = mean(itrs);
      a.se_itr = standard_error(itrs);
      report.aggregates.push_back(a);
    }
  }

  if (has(methods, Method::kSfda) && targets.size() >= 2) {
    const int per_duration = static_cast<int>(methods.size()) - 1;
    const int total = per_duration * static_cast<int>(cfg.eval.durations.size());
    for (const char* metric : {"accuracy", "itr"}) {
      const bool use_itr = std::string(metric) == "itr";
      for (const double duration : cfg.eval.durations) {
        const auto ours = values(Method::kSfda, duration, use_itr);
        for (const Method other : all_methods()) {
          if (other == Method::kSfda || !has(methods, other)) continue;
          SignificanceRow row;
          row.metric = metric;
          row.other = other;
          row.duration = duration;
          try {
            const TTestResult t = paired_t_test(ours, values(other, duration, use_itr));
            row.t = t.t;
            row.p = t.p;
            row.label = significance_label(t.p, per_duration, total);
          } catch (const DegenerateStatisticsError&) {
            row.degenerate = true;
            row.t = std::numeric_limits<double>::quiet_NaN();
            row.p = std::numeric_limits<double>::quiet_NaN();
          }
          report.significance.push_back(row);
        }
      }
    }
  }
  return report;
}

void write_report(const EvalReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(dir / name);
    if (!out) throw IoError("cannot write " + (dir / name).string());
    return out;
  };
  {
    auto out = open("report.json");
    out << report_json(report).dump(2) << '\n';
  }
  {
    auto out = open("results.csv");
    out << "method,duration_s,participant,accuracy,itr_bits_per_min,clamped\n";
    for (const auto& r : report.records) {
      out << to_string(r.method) << ',' << fmt(r.duration) << ',' << r.participant << ',' << fmt(r.accuracy) << ','
          << fmt(r.itr) << ',' << (r.clamped ? "true" : "false") << '\n';
    }
  }
  {
    auto out = open("significance.csv");
    out << "metric,method,other,duration_s,t,p,label\n";
    for (const auto& s : report.significance) {
      out << s.metric << ",sfda," << to_string(s.other) << ',' << fmt(s.duration) << ','
          << (s.degenerate ? "" : fmt(s.t)) << ',' << (s.degenerate ? "" : fmt(s.p)) << ',' << s.label << '\n';
    }
  }
  {
    auto out = open("lambda.csv");
    out << "participant,duration_s,selected_lambda,best_lambda,accuracy_gap\n";
    for (const auto& l : report.lambdas) {
      out << l.participant << ',' << fmt(l.duration) << ',' << fmt(l.selected) << ',' << fmt(l.best) << ','
          << fmt(l.gap) << '\n';
    }
  }
}

}  // namespace sfda
