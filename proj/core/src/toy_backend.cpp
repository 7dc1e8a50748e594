#include "prism/toy_backend.hpp"

#include <algorithm>
#include <cmath>

#include "prism/errors.hpp"
#include "prism/rng.hpp"

namespace prism {

const char* to_string(ToyCodec codec) {
    switch (codec) {
        case ToyCodec::identity: return "identity";
        case ToyCodec::avgpool2: return "avgpool2";
        case ToyCodec::avgpool4: return "avgpool4";
        case ToyCodec::avgpool8: return "avgpool8";
    }
    return "unknown";
}

ToyCodec toy_codec_from_string(const std::string& s) {
    if (s == "identity") return ToyCodec::identity;
    if (s == "avgpool2") return ToyCodec::avgpool2;
    if (s == "avgpool4") return ToyCodec::avgpool4;
    if (s == "avgpool8") return ToyCodec::avgpool8;
    throw ConfigError("unknown toy codec: " + s);
}

ToyBackend::ToyBackend(ToyBackendConfig cfg)
    : DenoiseBackend({Capability::encode, Capability::decode, Capability::predict_eps,
                      Capability::embed_image, Capability::embed_text,
                      Capability::extract_features}),
      cfg_(cfg) {
    if (cfg_.feature_grid < 1) throw ConfigError("feature grid must be >= 1");
}

int ToyBackend::pool_factor() const {
    switch (cfg_.codec) {
        case ToyCodec::identity: return 1;
        case ToyCodec::avgpool2: return 2;
        case ToyCodec::avgpool4: return 4;
        case ToyCodec::avgpool8: return 8;
    }
    return 1;
}

LatentTensor ToyBackend::do_encode(const ImageRGB& image) {
    const int k = pool_factor();
    const int lh = (image.height() + k - 1) / k;
    const int lw = (image.width() + k - 1) / k;
    LatentTensor z(3, lh, lw);
    for (int c = 0; c < 3; ++c) {
        for (int ly = 0; ly < lh; ++ly) {
            const int y0 = ly * k;
            const int y1 = std::min(y0 + k, image.height());
            for (int lx = 0; lx < lw; ++lx) {
                const int x0 = lx * k;
                const int x1 = std::min(x0 + k, image.width());
                double sum = 0.0;
                for (int y = y0; y < y1; ++y)
                    for (int x = x0; x < x1; ++x) sum += image.at(y, x, c);
                z.at(c, ly, lx) = sum / static_cast<double>((y1 - y0) * (x1 - x0));
            }
        }
    }
    return z;
}

ImageRGB ToyBackend::do_decode(const LatentTensor& z) {
    if (z.channels != 3) throw DimensionError("toy decoder expects 3 latent channels");
    const int k = pool_factor();
    Grid3 out(z.height * k, z.width * k);
    for (int c = 0; c < 3; ++c) {
        for (int y = 0; y < out.height; ++y) {
            for (int x = 0; x < out.width; ++x) {
                out.at(y, x, c) = z.at(c, y / k, x / k);
            }
        }
    }
    // linear carrier: decoding does not clip, pipeline callers clip at save time
    return ImageRGB::from_raw_unclipped(std::move(out));
}

LatentTensor ToyBackend::do_predict_eps(const LatentTensor& z, int t, const std::string&, double) {
    const double gain = cfg_.predictor_gain + cfg_.predictor_time_gain * static_cast<double>(t);
    return scale(z, gain);
}

std::vector<double> ToyBackend::do_embed_image(const ImageRGB& image) {
    // mean color; permutation-invariant by construction
    std::vector<double> v(3, 0.0);
    for (int y = 0; y < image.height(); ++y)
        for (int x = 0; x < image.width(); ++x)
            for (int c = 0; c < 3; ++c) v[static_cast<std::size_t>(c)] += image.at(y, x, c);
    for (double& x : v) x /= static_cast<double>(image.pixel_count());
    return v;
}

std::vector<double> ToyBackend::do_embed_text(const std::string& text) {
    // deterministic unit-ish vector in the mean-color space
    Rng rng(derive_seed(hash_string(text), hash_string("toy-text-embed")));
    std::vector<double> v(3);
    for (double& x : v) x = rng.uniform(0.05, 1.0);
    return v;
}

std::vector<double> ToyBackend::do_extract_features(const ImageRGB& image) {
    const int g = cfg_.feature_grid;
    std::vector<double> v(static_cast<std::size_t>(g) * g * 3, 0.0);
    std::vector<double> counts(v.size(), 0.0);
    for (int y = 0; y < image.height(); ++y) {
        const int gy = std::min(g - 1, y * g / image.height());
        for (int x = 0; x < image.width(); ++x) {
            const int gx = std::min(g - 1, x * g / image.width());
            for (int c = 0; c < 3; ++c) {
                const std::size_t i = (static_cast<std::size_t>(gy) * g + gx) * 3 + c;
                v[i] += image.at(y, x, c);
                counts[i] += 1.0;
            }
        }
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (counts[i] > 0.0) v[i] /= counts[i];
    }
    return v;
}

}  // namespace prism
