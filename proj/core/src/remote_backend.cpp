#include "prism/remote_backend.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "prism/base64.hpp"
#include "prism/errors.hpp"
#include "prism/image_io.hpp"

namespace prism {

using nlohmann::json;

RemoteConfig RemoteConfig::from_env() {
    RemoteConfig cfg;
    const char* url = std::getenv("PRISM_BACKEND_URL");
    if (!url || !*url) throw ConfigError("PRISM_BACKEND_URL is not set");
    cfg.base_url = url;
    if (const char* t = std::getenv("PRISM_BACKEND_TIMEOUT_S")) {
        try {
            cfg.timeout_s = std::stod(t);
        } catch (const std::exception&) {
            throw ConfigError("PRISM_BACKEND_TIMEOUT_S is not a number");
        }
    }
    return cfg;
}

namespace {
struct Handshake {
    std::set<Capability> caps;
    std::string model_id;
    std::map<std::string, int> dims;
};
}  // namespace

struct RemoteBackend::Impl {
    RemoteConfig cfg;
    std::uint64_t session_id;
    std::atomic<std::uint64_t> request_counter{0};

    explicit Impl(RemoteConfig c) : cfg(std::move(c)) {
        std::random_device rd;
        session_id = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }

    std::string next_request_id() {
        std::ostringstream os;
        os << std::hex << session_id << "-" << request_counter.fetch_add(1);
        return os.str();
    }

    // fresh client per request; no shared connection state between threads
    httplib::Client make_client() const {
        httplib::Client client(cfg.base_url);
        const auto sec = static_cast<time_t>(cfg.timeout_s);
        const auto usec = static_cast<time_t>((cfg.timeout_s - static_cast<double>(sec)) * 1e6);
        client.set_connection_timeout(sec, usec);
        client.set_read_timeout(sec, usec);
        client.set_write_timeout(sec, usec);
        return client;
    }

    json roundtrip(const std::string& path, const json* body) {
        const std::string request_id = next_request_id();
        const int attempts = cfg.retries + 1;
        bool timed_out = false;
        std::string last_error;

        for (int attempt = 0; attempt < attempts; ++attempt) {
            auto client = make_client();
            httplib::Headers headers{{"X-Request-Id", request_id}};
            httplib::Result res =
                body ? client.Post(path, headers, body->dump(), "application/json")
                     : client.Get(path, headers);

            if (!res) {
                const auto err = res.error();
                timed_out = (err == httplib::Error::ConnectionTimeout ||
                             err == httplib::Error::Read || err == httplib::Error::Write);
                last_error = httplib::to_string(err);
                continue;  // transport failure: retry with the same request id
            }
            if (res->status >= 500) {
                last_error = "HTTP " + std::to_string(res->status);
                if (attempt + 1 < attempts) continue;
                throw BackendError("backend " + path + " failed: HTTP " +
                                       std::to_string(res->status),
                                   res->status, res->body.substr(0, 200));
            }
            if (res->status < 200 || res->status >= 300) {
                throw BackendError("backend " + path + " failed: HTTP " +
                                       std::to_string(res->status),
                                   res->status, res->body.substr(0, 200));
            }
            try {
                return json::parse(res->body);
            } catch (const json::exception& e) {
                throw BackendError("backend " + path + " returned invalid JSON: " + e.what(), res->status,
                                   res->body.substr(0, 200));
            }
        }
        if (timed_out) {
            throw TimeoutError("backend " + path + " timed out after " +
                               std::to_string(attempts) + " attempts");
        }
        throw BackendError("backend " + path + " unreachable: " + last_error);
    }

    Handshake fetch_handshake() {
        const json reply = roundtrip("/v1/capabilities", nullptr);
        Handshake h;
        if (!reply.contains("capabilities") || !reply["capabilities"].is_array()) {
            throw BackendError("capabilities handshake missing 'capabilities' array");
        }
        // the client only ever drives endpoints it has a wire schema for
        static const std::set<std::string> kKnown = {"encode",      "decode",
                                                     "full_img2img", "embed_image",
                                                     "embed_text",   "extract_features"};
        for (const auto& item : reply["capabilities"]) {
            const std::string name = item.get<std::string>();
            if (kKnown.count(name)) h.caps.insert(capability_from_string(name));
        }
        if (reply.contains("model_id")) h.model_id = reply["model_id"].get<std::string>();
        if (reply.contains("dims") && reply["dims"].is_object()) {
            for (const auto& [k, v] : reply["dims"].items()) h.dims[k] = v.get<int>();
        }
        return h;
    }
};

namespace {

std::string image_to_b64(const ImageRGB& image) {
    return base64_encode(encode_png(image));
}

ImageRGB b64_to_image(const std::string& b64) {
    return decode_png(base64_decode(b64));
}

std::vector<double> parse_vector(const json& reply, const std::string& path) {
    if (!reply.contains("vector") || !reply["vector"].is_array()) {
        throw BackendError("backend " + path + " reply missing 'vector'");
    }
    std::vector<double> v = reply["vector"].get<std::vector<double>>();
    if (reply.contains("dim") && reply["dim"].get<std::size_t>() != v.size()) {
        throw BackendError("backend " + path + " dim does not match vector length");
    }
    return v;
}

}  // namespace

RemoteBackend::RemoteBackend(const RemoteConfig& cfg)
    : DenoiseBackend({}), impl_(std::make_unique<Impl>(cfg)) {
    // capabilities are whatever the service advertises, fixed at handshake
    Handshake h = impl_->fetch_handshake();
    model_id_ = cfg.model_id.empty() ? h.model_id : cfg.model_id;
    dims_ = std::move(h.dims);
    set_capabilities(std::move(h.caps));
}

RemoteBackend::~RemoteBackend() = default;

LatentTensor RemoteBackend::do_encode(const ImageRGB& image) {
    const json body = {{"image_b64", image_to_b64(image)}};
    const json reply = impl_->roundtrip("/v1/encode", &body);
    if (!reply.contains("shape") || !reply.contains("data")) {
        throw BackendError("encode reply missing shape/data");
    }
    const auto shape = reply["shape"].get<std::vector<int>>();
    if (shape.size() != 3) throw BackendError("encode reply shape must be [C,h,w]");
    LatentTensor z(shape[0], shape[1], shape[2]);
    const auto data = reply["data"].get<std::vector<double>>();
    if (data.size() != z.values.size()) throw BackendError("encode reply data size mismatch");
    z.values = data;
    return z;
}

ImageRGB RemoteBackend::do_decode(const LatentTensor& z) {
    const json body = {{"shape", {z.channels, z.height, z.width}}, {"data", z.values}};
    const json reply = impl_->roundtrip("/v1/decode", &body);
    if (!reply.contains("image_b64")) throw BackendError("decode reply missing image_b64");
    return b64_to_image(reply["image_b64"].get<std::string>());
}

ImageRGB RemoteBackend::do_img2img(const ImageRGB& image, const DiffusionConfig& cfg) {
    cfg.validate();
    const json body = {{"image_b64", image_to_b64(image)}, {"prompt", cfg.prompt},
                       {"steps", cfg.steps},               {"strength", cfg.strength},
                       {"guidance", cfg.guidance},         {"seed", cfg.seed},
                       {"eta", cfg.eta}};
    const json reply = impl_->roundtrip("/v1/img2img", &body);
    if (!reply.contains("image_b64")) throw BackendError("img2img reply missing image_b64");
    return b64_to_image(reply["image_b64"].get<std::string>());
}

std::vector<double> RemoteBackend::do_embed_image(const ImageRGB& image) {
    const json body = {{"image_b64", image_to_b64(image)}};
    return parse_vector(impl_->roundtrip("/v1/embed", &body), "/v1/embed");
}

std::vector<double> RemoteBackend::do_embed_text(const std::string& text) {
    const json body = {{"text", text}};
    return parse_vector(impl_->roundtrip("/v1/embed", &body), "/v1/embed");
}

std::vector<double> RemoteBackend::do_extract_features(const ImageRGB& image) {
    const json body = {{"image_b64", image_to_b64(image)}};
    return parse_vector(impl_->roundtrip("/v1/features", &body), "/v1/features");
}

}  // namespace prism
