#include "json_codec.hpp"

#include "prism/errors.hpp"

namespace prism {

namespace {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    return j.at(key).get<T>();
}

json metric_value_to_json(const MetricValue& v) {
    return json{{"value", v.value}, {"n", v.n_samples}};
}

MetricValue metric_value_from_json(const json& j) {
    MetricValue v;
    v.value = j.at("value").get<double>();
    v.n_samples = j.at("n").get<std::size_t>();
    return v;
}

}  // namespace

json noise_to_json(const NoiseSpec& spec) {
    json j{{"kind", to_string(spec.kind)}, {"sigma", spec.sigma},   {"density", spec.density},
           {"scale", spec.scale},          {"octaves", spec.octaves}, {"seed", spec.seed}};
    j["mu"] = spec.mu.has_value() ? json(*spec.mu) : json(nullptr);
    return j;
}

NoiseSpec noise_from_json(const json& j) {
    NoiseSpec spec;
    spec.kind = noise_kind_from_string(get_or<std::string>(j, "kind", "gaussian"));
    if (j.contains("mu") && !j.at("mu").is_null()) spec.mu = j.at("mu").get<double>();
    spec.sigma = get_or(j, "sigma", spec.sigma);
    spec.density = get_or(j, "density", spec.density);
    spec.scale = get_or(j, "scale", spec.scale);
    spec.octaves = get_or(j, "octaves", spec.octaves);
    spec.seed = get_or(j, "seed", spec.seed);
    spec.validate();
    return spec;
}

json chroma_to_json(const ChromaSpec& spec) {
    return json{{"mode", to_string(spec.mode)},
                {"offsets",
                 {{spec.offsets[0][0], spec.offsets[0][1]},
                  {spec.offsets[1][0], spec.offsets[1][1]},
                  {spec.offsets[2][0], spec.offsets[2][1]}}},
                {"seed", spec.seed}};
}

ChromaSpec chroma_from_json(const json& j) {
    ChromaSpec spec;
    spec.mode = chroma_mode_from_string(get_or<std::string>(j, "mode", "pixel_shuffle"));
    if (j.contains("offsets")) {
        const auto& offs = j.at("offsets");
        if (!offs.is_array() || offs.size() != 3) {
            throw ConfigError("chroma offsets must be three [dy,dx] pairs");
        }
        for (int c = 0; c < 3; ++c) {
            spec.offsets[static_cast<std::size_t>(c)][0] = offs[static_cast<std::size_t>(c)][0].get<int>();
            spec.offsets[static_cast<std::size_t>(c)][1] = offs[static_cast<std::size_t>(c)][1].get<int>();
        }
    }
    spec.seed = get_or(j, "seed", spec.seed);
    return spec;
}

json diffusion_to_json(const DiffusionConfig& cfg) {
    return json{{"steps", cfg.steps},     {"strength", cfg.strength}, {"guidance", cfg.guidance},
                {"prompt", cfg.prompt},   {"seed", cfg.seed},         {"eta", cfg.eta}};
}

DiffusionConfig diffusion_from_json(const json& j) {
    DiffusionConfig cfg;
    cfg.steps = get_or(j, "steps", cfg.steps);
    cfg.strength = get_or(j, "strength", cfg.strength);
    cfg.guidance = get_or(j, "guidance", cfg.guidance);
    cfg.prompt = get_or<std::string>(j, "prompt", cfg.prompt);
    cfg.seed = get_or(j, "seed", cfg.seed);
    cfg.eta = get_or(j, "eta", cfg.eta);
    cfg.validate();
    return cfg;
}

json metric_report_to_json(const MetricReport& report) {
    json j = json::object();
    auto put = [&j](const char* key, const std::optional<MetricValue>& v) {
        if (v.has_value()) j[key] = metric_value_to_json(*v);
    };
    put("fid", report.fid);
    put("nfid", report.nfid);
    put("ssim", report.ssim);
    put("clip_score", report.clip_score);
    put("entropy_bits", report.entropy_bits);
    put("diversity", report.diversity);
    if (!report.params.empty()) j["params"] = report.params;
    return j;
}

MetricReport metric_report_from_json(const json& j) {
    MetricReport report;
    auto get = [&j](const char* key) -> std::optional<MetricValue> {
        if (!j.contains(key)) return std::nullopt;
        return metric_value_from_json(j.at(key));
    };
    report.fid = get("fid");
    report.nfid = get("nfid");
    report.ssim = get("ssim");
    report.clip_score = get("clip_score");
    report.entropy_bits = get("entropy_bits");
    report.diversity = get("diversity");
    report.params = get_or<std::string>(j, "params", "");
    return report;
}

namespace {

json backend_to_json(const BackendConfig& cfg) {
    return json{{"kind", cfg.kind},
                {"toy",
                 {{"codec", to_string(cfg.toy.codec)},
                  {"predictor_gain", cfg.toy.predictor_gain},
                  {"predictor_time_gain", cfg.toy.predictor_time_gain},
                  {"feature_grid", cfg.toy.feature_grid}}},
                {"remote",
                 {{"base_url", cfg.remote.base_url},
                  {"timeout_s", cfg.remote.timeout_s},
                  {"retries", cfg.remote.retries},
                  {"model_id", cfg.remote.model_id}}}};
}

BackendConfig backend_from_json(const json& j) {
    BackendConfig cfg;
    cfg.kind = get_or<std::string>(j, "kind", cfg.kind);
    if (cfg.kind != "toy" && cfg.kind != "remote") {
        throw ConfigError("backend kind must be 'toy' or 'remote'");
    }
    if (j.contains("toy")) {
        const auto& t = j.at("toy");
        cfg.toy.codec = toy_codec_from_string(get_or<std::string>(t, "codec", "identity"));
        cfg.toy.predictor_gain = get_or(t, "predictor_gain", cfg.toy.predictor_gain);
        cfg.toy.predictor_time_gain = get_or(t, "predictor_time_gain", cfg.toy.predictor_time_gain);
        cfg.toy.feature_grid = get_or(t, "feature_grid", cfg.toy.feature_grid);
    }
    if (j.contains("remote")) {
        const auto& r = j.at("remote");
        cfg.remote.base_url = get_or<std::string>(r, "base_url", cfg.remote.base_url);
        cfg.remote.timeout_s = get_or(r, "timeout_s", cfg.remote.timeout_s);
        cfg.remote.retries = get_or(r, "retries", cfg.remote.retries);
        cfg.remote.model_id = get_or<std::string>(r, "model_id", cfg.remote.model_id);
    }
    return cfg;
}

}  // namespace

json job_config_to_json_value(const JobConfig& cfg) {
    return json{{"masks", cfg.masks},
                {"mask_dir", cfg.mask_dir},
                {"style", cfg.style},
                {"noise", noise_to_json(cfg.noise)},
                {"chroma", chroma_to_json(cfg.chroma)},
                {"diffusion", diffusion_to_json(cfg.diffusion)},
                {"backend", backend_to_json(cfg.backend)},
                {"schedule",
                 {{"T", cfg.schedule.T},
                  {"beta_start", cfg.schedule.beta_start},
                  {"beta_end", cfg.schedule.beta_end}}},
                {"samples_per_mask", cfg.samples_per_mask},
                {"output_dir", cfg.output_dir},
                {"seed", cfg.seed},
                {"workers", cfg.workers},
                {"eval",
                 {{"fid", cfg.eval.fid},
                  {"ssim", cfg.eval.ssim},
                  {"entropy", cfg.eval.entropy},
                  {"clip", cfg.eval.clip},
                  {"nfid_normalizer", cfg.eval.nfid_normalizer},
                  {"reference_dir", cfg.eval.reference_dir}}}};
}

JobConfig job_config_from_json_value(const json& j) {
    JobConfig cfg;
    cfg.masks = get_or(j, "masks", cfg.masks);
    cfg.mask_dir = get_or<std::string>(j, "mask_dir", cfg.mask_dir);
    cfg.style = get_or<std::string>(j, "style", cfg.style);
    if (j.contains("noise")) cfg.noise = noise_from_json(j.at("noise"));
    if (j.contains("chroma")) cfg.chroma = chroma_from_json(j.at("chroma"));
    if (j.contains("diffusion")) cfg.diffusion = diffusion_from_json(j.at("diffusion"));
    if (j.contains("backend")) cfg.backend = backend_from_json(j.at("backend"));
    if (j.contains("schedule")) {
        const auto& s = j.at("schedule");
        cfg.schedule.T = get_or(s, "T", cfg.schedule.T);
        cfg.schedule.beta_start = get_or(s, "beta_start", cfg.schedule.beta_start);
        cfg.schedule.beta_end = get_or(s, "beta_end", cfg.schedule.beta_end);
    }
    cfg.samples_per_mask = get_or(j, "samples_per_mask", cfg.samples_per_mask);
    cfg.output_dir = get_or<std::string>(j, "output_dir", cfg.output_dir);
    cfg.seed = get_or(j, "seed", cfg.seed);
    cfg.workers = get_or(j, "workers", cfg.workers);
    if (j.contains("eval")) {
        const auto& e = j.at("eval");
        cfg.eval.fid = get_or(e, "fid", cfg.eval.fid);
        cfg.eval.ssim = get_or(e, "ssim", cfg.eval.ssim);
        cfg.eval.entropy = get_or(e, "entropy", cfg.eval.entropy);
        cfg.eval.clip = get_or(e, "clip", cfg.eval.clip);
        cfg.eval.nfid_normalizer = get_or(e, "nfid_normalizer", cfg.eval.nfid_normalizer);
        cfg.eval.reference_dir = get_or<std::string>(e, "reference_dir", cfg.eval.reference_dir);
    }
    cfg.validate();
    return cfg;
}

}  // namespace prism
