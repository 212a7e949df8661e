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

#ifndef SFDA_SERIALIZATION_HPP_
#define SFDA_SERIALIZATION_HPP_

#include <filesystem>

#include <nlohmann/json.hpp>

#include "sfda/adapt.hpp"
#include "sfda/cca.hpp"
#include "sfda/filter_bank.hpp"
#include "sfda/loo.hpp"
#include "sfda/network.hpp"
#include "sfda/pretrain.hpp"
#include "sfda/synth.hpp"

namespace sfda {

// JSON mapping of configuration types. Missing keys keep their defaults;
// unknown keys raise FormatError. Parsed values are not validated here.

void to_json(nlohmann::json& j, const Architecture& v);
void from_json(const nlohmann::json& j, Architecture& v);
void to_json(nlohmann::json& j, const FilterBankConfig& v);
void from_json(const nlohmann::json& j, FilterBankConfig& v);
void to_json(nlohmann::json& j, const FbccaConfig& v);
void from_json(const nlohmann::json& j, FbccaConfig& v);
void to_json(nlohmann::json& j, const TrainingConfig& v);
void from_json(const nlohmann::json& j, TrainingConfig& v);
void to_json(nlohmann::json& j, const AdaptationConfig& v);
void from_json(const nlohmann::json& j, AdaptationConfig& v);
void to_json(nlohmann::json& j, const SynthConfig& v);
void from_json(const nlohmann::json& j, SynthConfig& v);
void to_json(nlohmann::json& j, const EvalConfig& v);
void from_json(const nlohmann::json& j, EvalConfig& v);
void to_json(nlohmann::json& j, const ExperimentConfig& v);
void from_json(const nlohmann::json& j, ExperimentConfig& v);

/// Reads and validates an experiment config file.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Adaptation trace: initial prediction choice, lambda_max and per-lambda
/// trial lists {t, b, overall_score, accepted, labels_changed, gated_out}.
nlohmann::json adaptation_trace_json(const AdaptationResult& result);

nlohmann::json report_json(const EvalReport& report);

}  // namespace sfda

#endif  // SFDA_SERIALIZATION_HPP_
