#include "prism/config.hpp"

#include <fstream>
#include <sstream>

#include "json_codec.hpp"
#include "prism/errors.hpp"

namespace prism {

void JobConfig::validate() const {
    noise.validate();
    diffusion.validate();
    if (samples_per_mask < 1) throw ConfigError("samples_per_mask must be >= 1");
    if (workers < 1) throw ConfigError("workers must be >= 1");
    if (output_dir.empty()) throw ConfigError("output_dir must be set");
    if (style.empty()) throw ConfigError("style must be 'random' or a reference image path");
    if (schedule.T < 1) throw ConfigError("schedule T must be >= 1");
    if (diffusion.steps > schedule.T) throw ConfigError("steps cannot exceed schedule length");
    if (!(eval.nfid_normalizer > 0.0)) throw ConfigError("nfid normalizer must be positive");
}

JobConfig job_config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    try {
        return job_config_from_json_value(j);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field has the wrong type: ") + e.what());
    }
}

JobConfig load_job_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return job_config_from_json(buffer.str());
}

std::string job_config_to_json(const JobConfig& cfg) {
    return job_config_to_json_value(cfg).dump(2) + "\n";
}

void save_job_config(const JobConfig& cfg, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write config: " + path);
    out << job_config_to_json(cfg);
}

}  // namespace prism
