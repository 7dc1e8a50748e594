#pragma once

#include <cstdint>
#include <string>

namespace prism {

struct DiffusionConfig {
    int steps = 10;
    double strength = 0.3;   // fraction of the trajectory re-noised and re-denoised
    double guidance = 10.0;  // passed through to the noise predictor untouched
    std::string prompt = "a realistic dendrite sample";
    std::uint64_t seed = 0;
    double eta = 0.0;  // 0 = deterministic update

    void validate() const;  // throws ConfigError
};

}  // namespace prism
