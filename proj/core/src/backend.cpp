#include "prism/backend.hpp"

#include "prism/errors.hpp"

namespace prism {

const char* to_string(Capability c) {
    switch (c) {
        case Capability::encode: return "encode";
        case Capability::decode: return "decode";
        case Capability::predict_eps: return "predict_eps";
        case Capability::full_img2img: return "full_img2img";
        case Capability::embed_image: return "embed_image";
        case Capability::embed_text: return "embed_text";
        case Capability::extract_features: return "extract_features";
    }
    return "unknown";
}

Capability capability_from_string(const std::string& s) {
    if (s == "encode") return Capability::encode;
    if (s == "decode") return Capability::decode;
    if (s == "predict_eps") return Capability::predict_eps;
    if (s == "full_img2img") return Capability::full_img2img;
    if (s == "embed_image") return Capability::embed_image;
    if (s == "embed_text") return Capability::embed_text;
    if (s == "extract_features") return Capability::extract_features;
    throw ConfigError("unknown capability: " + s);
}

void DenoiseBackend::require(Capability c) const {
    if (!supports(c)) {
        throw UnsupportedOperationError(std::string("backend does not support ") + to_string(c));
    }
}

LatentTensor DenoiseBackend::encode(const ImageRGB& image) {
    require(Capability::encode);
    return do_encode(image);
}

ImageRGB DenoiseBackend::decode(const LatentTensor& z) {
    require(Capability::decode);
    return do_decode(z);
}

LatentTensor DenoiseBackend::predict_eps(const LatentTensor& z, int t, const std::string& prompt,
                                         double guidance) {
    require(Capability::predict_eps);
    return do_predict_eps(z, t, prompt, guidance);
}

ImageRGB DenoiseBackend::img2img(const ImageRGB& image, const DiffusionConfig& cfg) {
    require(Capability::full_img2img);
    return do_img2img(image, cfg);
}

std::vector<double> DenoiseBackend::embed_image(const ImageRGB& image) {
    require(Capability::embed_image);
    return do_embed_image(image);
}

std::vector<double> DenoiseBackend::embed_text(const std::string& text) {
    require(Capability::embed_text);
    return do_embed_text(text);
}

std::vector<double> DenoiseBackend::extract_features(const ImageRGB& image) {
    require(Capability::extract_features);
    return do_extract_features(image);
}

// Defaults exist so subclasses only override what they advertise; require()
// already guarantees these are unreachable for honest capability sets.
LatentTensor DenoiseBackend::do_encode(const ImageRGB&) {
    throw UnsupportedOperationError("encode not implemented");
}
ImageRGB DenoiseBackend::do_decode(const LatentTensor&) {
    throw UnsupportedOperationError("decode not implemented");
}
LatentTensor DenoiseBackend::do_predict_eps(const LatentTensor&, int, const std::string&, double) {
    throw UnsupportedOperationError("predict_eps not implemented");
}
ImageRGB DenoiseBackend::do_img2img(const ImageRGB&, const DiffusionConfig&) {
    throw UnsupportedOperationError("img2img not implemented");
}
std::vector<double> DenoiseBackend::do_embed_image(const ImageRGB&) {
    throw UnsupportedOperationError("embed_image not implemented");
}
std::vector<double> DenoiseBackend::do_embed_text(const std::string&) {
    throw UnsupportedOperationError("embed_text not implemented");
}
std::vector<double> DenoiseBackend::do_extract_features(const ImageRGB&) {
    throw UnsupportedOperationError("extract_features not implemented");
}

}  // namespace prism
