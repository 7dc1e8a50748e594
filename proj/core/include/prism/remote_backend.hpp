#pragma once

#include <map>
#include <memory>
#include <string>

#include "prism/backend.hpp"

namespace prism {

struct RemoteConfig {
    std::string base_url;
    double timeout_s = 30.0;
    int retries = 2;        // additional attempts after the first
    std::string model_id;   // filled from the handshake when empty

    // PRISM_BACKEND_URL (required), PRISM_BACKEND_TIMEOUT_S (optional)
    static RemoteConfig from_env();
};

// HTTP client for an externally served latent-diffusion model. Capabilities
// come from the GET /v1/capabilities handshake; every call carries a
// per-request id header so idempotent retries are safe. Endpoints:
//   POST /v1/img2img  {image_b64, prompt, steps, strength, guidance, seed, eta}
//                     -> {image_b64, model_id, seed}
//   POST /v1/encode   {image_b64}     -> {shape, data}
//   POST /v1/decode   {shape, data}   -> {image_b64}
//   POST /v1/embed    {image_b64 | text} -> {vector, dim}
//   POST /v1/features {image_b64}     -> {vector, dim}
class RemoteBackend : public DenoiseBackend {
public:
    explicit RemoteBackend(const RemoteConfig& cfg);
    ~RemoteBackend() override;

    const std::string& model_id() const { return model_id_; }
    // embedding/feature dimensions reported by the service handshake
    const std::map<std::string, int>& dims() const { return dims_; }

protected:
    LatentTensor do_encode(const ImageRGB& image) override;
    ImageRGB do_decode(const LatentTensor& z) override;
    ImageRGB do_img2img(const ImageRGB& image, const DiffusionConfig& cfg) override;
    std::vector<double> do_embed_image(const ImageRGB& image) override;
    std::vector<double> do_embed_text(const std::string& text) override;
    std::vector<double> do_extract_features(const ImageRGB& image) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::string model_id_;
    std::map<std::string, int> dims_;
};

}  // namespace prism
