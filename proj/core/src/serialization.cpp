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

#include "sfda/serialization.hpp"

#include <fstream>
#include <set>
#include <string>

#include "sfda/errors.hpp"

namespace sfda {

using nlohmann::json;

namespace {

class FieldReader {
 public:
  FieldReader(const json& j, std::string what) : j_(j), what_(std::move(what)) {
    if (!j_.is_object()) throw FormatError(what_ + " must be a JSON object");
  }

  template <typename T>
  void operator()(const char* key, T& out) {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception& e) {
      throw FormatError(what_ + "." + key + ": " + e.what());
    }
  }

  template <typename T, typename Parse>
  void parsed(const char* key, T& out, Parse parse) {
    std::string s;
    (*this)(key, s);
    if (j_.contains(key)) {
      try {
        out = parse(s);
      } catch (const ArgumentError& e) {
        throw FormatError(what_ + "." + key + ": " + e.what());
      }
    }
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw FormatError("unknown key '" + key + "' in " + what_);
    }
  }

 private:
  const json& j_;
  std::string what_;
  std::set<std::string> seen_;
};

}  // namespace

void to_json(json& j, const Architecture& v) {
  j = json{{"n_subbands", v.n_subbands},
           {"n_channels", v.n_channels},
           {"n_samples", v.n_samples},
           {"n_classes", v.n_classes},
           {"n_filters", v.n_filters},
           {"kernel1", v.kernel1},
           {"stride1", v.stride1},
           {"kernel2", v.kernel2},
           {"dropout_channel", v.dropout_channel},
           {"dropout_temporal1", v.dropout_temporal1},
           {"dropout_temporal2", v.dropout_temporal2}};
}

void from_json(const json& j, Architecture& v) {
  FieldReader r(j, "architecture");
  r("n_subbands", v.n_subbands);
  r("n_channels", v.n_channels);
  r("n_samples", v.n_samples);
  r("n_classes", v.n_classes);
  r("n_filters", v.n_filters);
  r("kernel1", v.kernel1);
  r("stride1", v.stride1);
  r("kernel2", v.kernel2);
  r("dropout_channel", v.dropout_channel);
  r("dropout_temporal1", v.dropout_temporal1);
  r("dropout_temporal2", v.dropout_temporal2);
  r.finish();
}

void to_json(json& j, const FilterBankConfig& v) {
  j = json{{"low_cutoffs", v.low_cutoffs},
           {"high_cutoff", v.high_cutoff},
           {"filter_order", v.filter_order},
           {"ripple_db", v.ripple_db},
           {"design", to_string(v.design)}};
}

void from_json(const json& j, FilterBankConfig& v) {
  FieldReader r(j, "filter_bank");
  r("low_cutoffs", v.low_cutoffs);
  r("high_cutoff", v.high_cutoff);
  r("filter_order", v.filter_order);
  r("ripple_db", v.ripple_db);
  r.parsed("design", v.design, filter_design_from_string);
  r.finish();
}

void to_json(json& j, const FbccaConfig& v) {
  j = json{{"filter_bank", v.bank},
           {"n_harmonics", v.n_harmonics},
           {"weight_a", v.weight_a},
           {"weight_b", v.weight_b}};
}

void from_json(const json& j, FbccaConfig& v) {
  FieldReader r(j, "fbcca");
  r("filter_bank", v.bank);
  r("n_harmonics", v.n_harmonics);
  r("weight_a", v.weight_a);
  r("weight_b", v.weight_b);
  r.finish();
}

void to_json(json& j, const TrainingConfig& v) {
  j = json{{"epochs", v.epochs},
           {"batch_size", v.batch_size},
           {"learning_rate", v.learning_rate},
           {"beta", v.beta},
           {"optimizer", to_string(v.optimizer)},
           {"seed", v.seed}};
}

void from_json(const json& j, TrainingConfig& v) {
  FieldReader r(j, "training");
  r("epochs", v.epochs);
  r("batch_size", v.batch_size);
  r("learning_rate", v.learning_rate);
  r("beta", v.beta);
  r.parsed("optimizer", v.optimizer, optimizer_from_string);
  r("seed", v.seed);
  r.finish();
}

void to_json(json& j, const AdaptationConfig& v) {
  j = json{{"learning_rate", v.learning_rate},
           {"beta", v.beta},
           {"max_stalled", v.max_stalled},
           {"epochs", v.epochs},
           {"optimizer", to_string(v.optimizer)},
           {"lambda_grid", v.lambda_grid},
           {"delta", v.delta},
           {"k_max", v.k_max},
           {"max_iterations", v.max_iterations},
           {"seed", v.seed},
           {"threads", v.threads}};
}

void from_json(const json& j, AdaptationConfig& v) {
  FieldReader r(j, "adaptation");
  r("learning_rate", v.learning_rate);
  r("beta", v.beta);
  r("max_stalled", v.max_stalled);
  r("epochs", v.epochs);
  r.parsed("optimizer", v.optimizer, optimizer_from_string);
  r("lambda_grid", v.lambda_grid);
  r("delta", v.delta);
  r("k_max", v.k_max);
  r("max_iterations", v.max_iterations);
  r("seed", v.seed);
  r("threads", v.threads);
  r.finish();
}

void to_json(json& j, const SynthConfig& v) {
  j = json{{"n_participants", v.n_participants},
           {"n_blocks", v.n_blocks},
           {"snr_db", v.snr_db},
           {"n_harmonics_signal", v.n_harmonics_signal},
           {"mixing_strength", v.mixing_strength},
           {"harmonic_decay", v.harmonic_decay},
           {"latency_spread", v.latency_spread},
           {"seed", v.seed}};
}

void from_json(const json& j, SynthConfig& v) {
  FieldReader r(j, "synth");
  r("n_participants", v.n_participants);
  r("n_blocks", v.n_blocks);
  r("snr_db", v.snr_db);
  r("n_harmonics_signal", v.n_harmonics_signal);
  r("mixing_strength", v.mixing_strength);
  r("latency_spread", v.latency_spread);
  r("harmonic_decay", v.harmonic_decay);
  r("seed", v.seed);
  r.finish();
}

void to_json(json& j, const EvalConfig& v) {
  json methods = json::array();
  for (const Method m : v.methods) methods.push_back(to_string(m));
  j = json{{"durations", v.durations},
           {"gaze_shift", v.gaze_shift},
           {"latency", v.latency},
           {"channel_subset", v.channel_subset},
           {"methods", methods},
           {"targets", v.targets},
           {"seed", v.seed},
           {"jobs", v.jobs}};
}

void from_json(const json& j, EvalConfig& v) {
  FieldReader r(j, "evaluation");
  r("durations", v.durations);
  r("gaze_shift", v.gaze_shift);
  r("latency", v.latency);
  r("channel_subset", v.channel_subset);
  std::vector<std::string> methods;
  r("methods", methods);
  if (j.contains("methods")) {
    v.methods.clear();
    for (const auto& m : methods) {
      try {
        v.methods.push_back(method_from_string(m));
      } catch (const ArgumentError& e) {
        throw FormatError(std::string("evaluation.methods: ") + e.what());
      }
    }
  }
  r("targets", v.targets);
  r("seed", v.seed);
  r("jobs", v.jobs);
  r.finish();
}

void to_json(json& j, const ExperimentConfig& v) {
  j = json{{"data", v.data},
           {"fbcca", v.fbcca},
           {"architecture", v.arch},
           {"training", v.training},
           {"adaptation", v.adaptation},
           {"evaluation", v.eval}};
}

void from_json(const json& j, ExperimentConfig& v) {
  FieldReader r(j, "config");
  r("data", v.data);
  r("fbcca", v.fbcca);
  r("architecture", v.arch);
  r("training", v.training);
  r("adaptation", v.adaptation);
  r("evaluation", v.eval);
  r.finish();
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  ExperimentConfig cfg = j.get<ExperimentConfig>();
  cfg.validate();
  return cfg;
}

json adaptation_trace_json(const AdaptationResult& result) {
  json runs = json::array();
  for (const auto& run : result.runs) {
    json trials = json::array();
    for (const auto& t : run.trials) {
      trials.push_back({{"t", t.t},
                        {"b", t.b},
                        {"overall_score", t.overall_score},
                        {"accepted", t.accepted},
                        {"labels_changed", t.labels_changed},
                        {"gated_out", t.gated_out}});
    }
    runs.push_back({{"lambda", run.lambda},
                    {"initial_score", run.initial_score},
                    {"final_score", run.final_score()},
                    {"iterations", run.iterations()},
                    {"channel_index", run.channel_index},
                    {"accepted_scores", run.accepted_scores},
                    {"trials", trials}});
  }
  return json{{"initial",
               {{"source", to_string(result.initial.source)},
                {"dnn_score", result.initial.dnn_score},
                {"fbcca_score", result.initial.fbcca_score}}},
              {"lambda_max", result.lambda_max()},
              {"runs", runs}};
}

json report_json(const EvalReport& report) {
  json records = json::array();
  for (const auto& r : report.records) {
    records.push_back({{"method", to_string(r.method)},
                       {"duration_s", r.duration},
                       {"participant", r.participant},
                       {"accuracy", r.accuracy},
                       {"itr_bits_per_min", r.itr},
                       {"clamped", r.clamped}});
  }
  json aggregates = json::array();
  for (const auto& a : report.aggregates) {
    aggregates.push_back({{"method", to_string(a.method)},
                          {"duration_s", a.duration},
                          {"n", a.n},
                          {"mean_accuracy", a.mean_accuracy},
                          {"se_accuracy", a.se_accuracy},
                          {"mean_itr", a.mean_itr},
                          {"se_itr", a.se_itr}});
  }
  json significance = json::array();
  for (const auto& s : report.significance) {
    json row{{"metric", s.metric},
             {"method", to_string(Method::kSfda)},
             {"other", to_string(s.other)},
             {"duration_s", s.duration},
             {"degenerate", s.degenerate},
             {"label", s.label}};
    row["t"] = s.degenerate ? json(nullptr) : json(s.t);
    row["p"] = s.degenerate ? json(nullptr) : json(s.p);
    significance.push_back(row);
  }
  json lambdas = json::array();
  for (const auto& l : report.lambdas) {
    lambdas.push_back({{"participant", l.participant},
                       {"duration_s", l.duration},
                       {"selected", l.selected},
                       {"best", l.best},
                       {"accuracy_gap", l.gap}});
  }
  json adaptations = json::array();
  for (const auto& f : report.adaptations) {
    json trace = adaptation_trace_json(f.result);
    trace["participant"] = f.participant;
    trace["duration_s"] = f.duration;
    trace["initial_accuracy"] = f.initial_accuracy;
    trace["run_accuracy"] = f.run_accuracy;
    adaptations.push_back(std::move(trace));
  }
  return json{{"records", records},
              {"aggregates", aggregates},
              {"significance", significance},
              {"lambda_selection", lambdas},
              {"adaptation", adaptations}};
}

}  // namespace sfda
