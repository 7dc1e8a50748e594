#pragma once

// JSON codecs shared by the config loader and the manifest. Kept out of the
// public headers so the vendored json library stays an implementation detail.

#include <nlohmann/json.hpp>

#include "prism/config.hpp"
#include "prism/manifest.hpp"

namespace prism {

using nlohmann::json;

json noise_to_json(const NoiseSpec& spec);
NoiseSpec noise_from_json(const json& j);

json chroma_to_json(const ChromaSpec& spec);
ChromaSpec chroma_from_json(const json& j);

json diffusion_to_json(const DiffusionConfig& cfg);
DiffusionConfig diffusion_from_json(const json& j);

json metric_report_to_json(const MetricReport& report);
MetricReport metric_report_from_json(const json& j);

json job_config_to_json_value(const JobConfig& cfg);
JobConfig job_config_from_json_value(const json& j);

}  // namespace prism
