#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "prism/image.hpp"

namespace prism {

enum class NoiseKind { gaussian, salt_pepper, perlin };

const char* to_string(NoiseKind kind);
NoiseKind noise_kind_from_string(const std::string& s);

struct NoiseSpec {
    NoiseKind kind = NoiseKind::gaussian;
    // Gaussian / Perlin mean. Unset means "use the reference channel mean"
    // when styling a mask, and 0 when sampling a standalone field.
    std::optional<double> mu;
    double sigma = 0.1;       // gaussian std / salt-pepper amplitude / perlin std
    double density = 0.05;    // salt-pepper: fraction of impulse pixels
    double scale = 32.0;      // perlin: base cell size in pixels
    int octaves = 4;          // perlin
    std::uint64_t seed = 0;

    void validate() const;  // throws ConfigError
};

// Same (spec, height, width) always reproduces the same field.
struct NoiseField {
    Grid3 values;
    NoiseSpec spec;

    int height() const { return values.height; }
    int width() const { return values.width; }
};

// gaussian:    i.i.d. N(mean_c, sigma^2) per pixel-channel
// salt_pepper: +sigma on a density/2 fraction of pixels, -sigma on another
//              density/2 (impulses hit all three channels of a pixel), 0 rest
// perlin:      per-channel gradient noise rescaled to mean mean_c, std sigma
Grid3 sample_noise_resolved(const NoiseSpec& spec, int height, int width,
                            const std::array<double, 3>& mean_per_channel);

// mean resolves to spec.mu if set, else 0
NoiseField sample_noise(const NoiseSpec& spec, int height, int width);

// Raw multi-octave gradient noise in roughly [-1, 1], before any rescale.
double perlin_octaves(double x, double y, const std::uint8_t perm[512], int octaves);
void build_permutation(std::uint64_t seed, std::uint8_t perm[512]);

}  // namespace prism
