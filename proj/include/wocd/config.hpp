#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "wocd/synth.hpp"
#include "wocd/trainer.hpp"

namespace wocd {

// JSON mirrors of the config structs. Unknown keys are rejected; missing keys
// keep their defaults.
nlohmann::json to_json(const TrainConfig& config);
TrainConfig train_config_from_json(const nlohmann::json& json, TrainConfig base = {});

nlohmann::json to_json(const SynthConfig& config);
SynthConfig synth_config_from_json(const nlohmann::json& json, SynthConfig base = {});

nlohmann::json to_json(const RunReport& report);

// Flat CSV row for sweep aggregation; ONMI as a percentage with one decimal.
std::string report_csv_header();
std::string report_csv_row(const RunReport& report);

}  // namespace wocd
