#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prism/diffusion_config.hpp"
#include "prism/noise.hpp"
#include "prism/remote_backend.hpp"
#include "prism/toy_backend.hpp"
#include "prism/transform.hpp"

namespace prism {

struct ScheduleConfig {
    int T = 1000;
    double beta_start = 0.00085;
    double beta_end = 0.012;
};

struct EvalConfig {
    bool fid = false;
    bool ssim = true;
    bool entropy = true;
    bool clip = false;
    double nfid_normalizer = 1.0;
    std::string reference_dir;  // empty disables FID against a reference set
};

struct BackendConfig {
    std::string kind = "toy";  // "toy" | "remote"
    ToyBackendConfig toy;
    RemoteConfig remote;
};

// One generation run, fully serializable: a run is reproducible from this
// config alone. All per-record seeds derive from `seed` and the record index.
struct JobConfig {
    std::vector<std::string> masks;  // explicit files
    std::string mask_dir;            // or every *.png under a directory
    std::string style = "random";    // "random" or a reference image path
    NoiseSpec noise;
    ChromaSpec chroma;
    DiffusionConfig diffusion;
    BackendConfig backend;
    ScheduleConfig schedule;
    int samples_per_mask = 1;
    std::string output_dir = "out";
    std::uint64_t seed = 0;
    int workers = 1;
    EvalConfig eval;

    void validate() const;  // throws ConfigError
};

// JSON round trip. Loading applies defaults for absent fields; saving always
// writes every field, which is what the per-run config echo relies on.
JobConfig job_config_from_json(const std::string& text);
JobConfig load_job_config(const std::string& path);
std::string job_config_to_json(const JobConfig& cfg);
void save_job_config(const JobConfig& cfg, const std::string& path);

}  // namespace prism
