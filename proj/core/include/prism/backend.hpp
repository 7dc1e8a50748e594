#pragma once

#include <set>
#include <string>
#include <vector>

#include "prism/diffusion_config.hpp"
#include "prism/image.hpp"
#include "prism/latent.hpp"

namespace prism {

enum class Capability {
    encode,
    decode,
    predict_eps,
    full_img2img,
    embed_image,
    embed_text,
    extract_features,
};

const char* to_string(Capability c);
Capability capability_from_string(const std::string& s);

// Denoising-backend abstraction: pixel<->latent codec, noise prediction,
// whole-image translation, and the embedding/feature extractors the metrics
// consume. Every public call verifies the capability first, so an
// unsupported operation raises UnsupportedOperationError before any work
// (or network traffic) happens.
class DenoiseBackend {
public:
    virtual ~DenoiseBackend() = default;

    const std::set<Capability>& capabilities() const { return caps_; }
    bool supports(Capability c) const { return caps_.count(c) > 0; }

    LatentTensor encode(const ImageRGB& image);
    ImageRGB decode(const LatentTensor& z);
    LatentTensor predict_eps(const LatentTensor& z, int t, const std::string& prompt,
                             double guidance);
    ImageRGB img2img(const ImageRGB& image, const DiffusionConfig& cfg);
    std::vector<double> embed_image(const ImageRGB& image);
    std::vector<double> embed_text(const std::string& text);
    std::vector<double> extract_features(const ImageRGB& image);

protected:
    explicit DenoiseBackend(std::set<Capability> caps) : caps_(std::move(caps)) {}
    // for backends that learn their capability set from a handshake
    void set_capabilities(std::set<Capability> caps) { caps_ = std::move(caps); }

    virtual LatentTensor do_encode(const ImageRGB&);
    virtual ImageRGB do_decode(const LatentTensor&);
    virtual LatentTensor do_predict_eps(const LatentTensor&, int, const std::string&, double);
    virtual ImageRGB do_img2img(const ImageRGB&, const DiffusionConfig&);
    virtual std::vector<double> do_embed_image(const ImageRGB&);
    virtual std::vector<double> do_embed_text(const std::string&);
    virtual std::vector<double> do_extract_features(const ImageRGB&);

    void require(Capability c) const;

private:
    std::set<Capability> caps_;
};

}  // namespace prism
