#pragma once

#include <string>

#include "prism/backend.hpp"

namespace prism {

enum class ToyCodec { identity, avgpool2, avgpool4, avgpool8 };

const char* to_string(ToyCodec codec);
ToyCodec toy_codec_from_string(const std::string& s);

struct ToyBackendConfig {
    ToyCodec codec = ToyCodec::identity;
    // eps_hat(z, t) = (predictor_gain + predictor_time_gain * t) * z
    double predictor_gain = 0.0;
    double predictor_time_gain = 0.0;
    // extract_features pools the image onto this grid (grid x grid x 3 dims)
    int feature_grid = 8;
};

// Fully linear desk-scale backend: k x k average-pool encoder, nearest-
// neighbor decoder, z-proportional noise predictor. Linearity makes the
// residual algebra exactly checkable. Latents stay pixel-aligned with 3
// channels.
class ToyBackend : public DenoiseBackend {
public:
    explicit ToyBackend(ToyBackendConfig cfg = {});

    const ToyBackendConfig& config() const { return cfg_; }
    int pool_factor() const;

protected:
    LatentTensor do_encode(const ImageRGB& image) override;
    ImageRGB do_decode(const LatentTensor& z) override;
    LatentTensor do_predict_eps(const LatentTensor& z, int t, const std::string& prompt,
                                double guidance) override;
    std::vector<double> do_embed_image(const ImageRGB& image) override;
    std::vector<double> do_embed_text(const std::string& text) override;
    std::vector<double> do_extract_features(const ImageRGB& image) override;

private:
    ToyBackendConfig cfg_;
};

}  // namespace prism
