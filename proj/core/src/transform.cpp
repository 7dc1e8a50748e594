#include "prism/transform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "prism/errors.hpp"
#include "prism/rng.hpp"

namespace prism {

const char* to_string(ChromaMode mode) {
    switch (mode) {
        case ChromaMode::none: return "none";
        case ChromaMode::global_permute: return "global_permute";
        case ChromaMode::pixel_shuffle: return "pixel_shuffle";
        case ChromaMode::channel_offset: return "channel_offset";
    }
    return "unknown";
}

ChromaMode chroma_mode_from_string(const std::string& s) {
    if (s == "none") return ChromaMode::none;
    if (s == "global_permute") return ChromaMode::global_permute;
    if (s == "pixel_shuffle") return ChromaMode::pixel_shuffle;
    if (s == "channel_offset") return ChromaMode::channel_offset;
    throw ConfigError("unknown chroma mode: " + s);
}

ImageRGB chromatic_aberration(const ImageRGB& image, const ChromaSpec& spec) {
    const int h = image.height();
    const int w = image.width();
    switch (spec.mode) {
        case ChromaMode::none:
            return image;
        case ChromaMode::global_permute: {
            std::array<int, 3> perm{0, 1, 2};
            Rng rng(derive_seed(spec.seed, hash_string("chroma-global")));
            rng.shuffle(perm.begin(), perm.end());
            ImageRGB out(h, w);
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x)
                    for (int c = 0; c < 3; ++c) out.at(y, x, c) = image.at(y, x, perm[c]);
            return out;
        }
        case ChromaMode::pixel_shuffle: {
            Rng rng(derive_seed(spec.seed, hash_string("chroma-pixel")));
            ImageRGB out(h, w);
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    std::array<double, 3> v{image.at(y, x, 0), image.at(y, x, 1), image.at(y, x, 2)};
                    rng.shuffle(v.begin(), v.end());
                    out.at(y, x, 0) = v[0];
                    out.at(y, x, 1) = v[1];
                    out.at(y, x, 2) = v[2];
                }
            }
            return out;
        }
        case ChromaMode::channel_offset: {
            for (const auto& off : spec.offsets) {
                if (std::abs(off[0]) >= h || std::abs(off[1]) >= w) {
                    throw ConfigError("channel offset exceeds image dimensions");
                }
            }
            ImageRGB out(h, w);
            for (int c = 0; c < 3; ++c) {
                const int dy = spec.offsets[c][0];
                const int dx = spec.offsets[c][1];
                for (int y = 0; y < h; ++y) {
                    const int sy = std::clamp(y - dy, 0, h - 1);
                    for (int x = 0; x < w; ++x) {
                        const int sx = std::clamp(x - dx, 0, w - 1);
                        out.at(y, x, c) = image.at(sy, sx, c);
                    }
                }
            }
            return out;
        }
    }
    throw ConfigError("unknown chroma mode");
}

Grid3 prism_field(const BinaryMask& mask, const ChannelStats& style, const NoiseSpec& noise) {
    std::array<double, 3> mean = style.mu;
    if (noise.mu.has_value()) mean = {*noise.mu, *noise.mu, *noise.mu};
    Grid3 field = sample_noise_resolved(noise, mask.height(), mask.width(), mean);
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            const double m = static_cast<double>(mask.at(y, x));
            for (int c = 0; c < 3; ++c) {
                field.at(y, x, c) += m * style.sigma[c] + style.mu[c];
            }
        }
    }
    return field;
}

ImageRGB apply_prism(const BinaryMask& mask, const ChannelStats& style,
                     const NoiseSpec& noise, const ChromaSpec& chroma) {
    const Grid3 field = prism_field(mask, style, noise);
    return chromatic_aberration(ImageRGB::from_clipped(field), chroma);
}

ImageRGB apply_prism(const BinaryMask& mask, const ChannelStats& style,
                     const NoiseField& field, const ChromaSpec& chroma) {
    if (field.height() != mask.height() || field.width() != mask.width()) {
        throw DimensionError("noise field dimensions do not match mask");
    }
    Grid3 styled = field.values;
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            const double m = static_cast<double>(mask.at(y, x));
            for (int c = 0; c < 3; ++c) {
                styled.at(y, x, c) += m * style.sigma[c] + style.mu[c];
            }
        }
    }
    return chromatic_aberration(ImageRGB::from_clipped(styled), chroma);
}

ChannelStats random_style(std::uint64_t seed, int height, int width) {
    Rng rng(derive_seed(seed, hash_string("random-style")));
    ImageRGB img(height, width);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            for (int c = 0; c < 3; ++c) img.at(y, x, c) = rng.uniform();
    return channel_stats(img);
}

}  // namespace prism
