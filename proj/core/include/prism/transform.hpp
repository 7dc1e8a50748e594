#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "prism/image.hpp"
#include "prism/noise.hpp"

namespace prism {

enum class ChromaMode { none, global_permute, pixel_shuffle, channel_offset };

const char* to_string(ChromaMode mode);
ChromaMode chroma_mode_from_string(const std::string& s);

struct ChromaSpec {
    ChromaMode mode = ChromaMode::pixel_shuffle;
    // (dy, dx) per channel, channel_offset mode only; edge-clamped lookup
    std::array<std::array<int, 2>, 3> offsets{{{0, 0}, {0, 0}, {0, 0}}};
    std::uint64_t seed = 0;
};

// none            identity
// global_permute  one channel permutation drawn from seed, applied everywhere
// pixel_shuffle   independent permutation of the 3 values at each pixel
// channel_offset  each channel translated by its (dy, dx), edges clamped
ImageRGB chromatic_aberration(const ImageRGB& image, const ChromaSpec& spec);

// Styled mask before clipping: out_c = M * sigma_c + mu_c + n_c. The noise
// mean defaults to the style's channel mean when spec.mu is unset.
Grid3 prism_field(const BinaryMask& mask, const ChannelStats& style, const NoiseSpec& noise);

// clip(prism_field) followed by chromatic aberration
ImageRGB apply_prism(const BinaryMask& mask, const ChannelStats& style,
                     const NoiseSpec& noise, const ChromaSpec& chroma);

// Variant with a caller-supplied noise field; throws DimensionError on shape mismatch.
ImageRGB apply_prism(const BinaryMask& mask, const ChannelStats& style,
                     const NoiseField& field, const ChromaSpec& chroma);

// Stats of a seeded uniform-random image; approaches mu = 0.5,
// sigma = 1/sqrt(12) per channel as the sample grows.
ChannelStats random_style(std::uint64_t seed, int height = 1024, int width = 1024);

}  // namespace prism
