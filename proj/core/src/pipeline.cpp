#include "prism/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <filesystem>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "prism/ddim.hpp"
#include "prism/errors.hpp"
#include "prism/forest.hpp"
#include "prism/image_io.hpp"
#include "prism/metrics.hpp"
#include "prism/rng.hpp"
#include "prism/transform.hpp"

namespace fs = std::filesystem;

namespace prism {

const char* const kAblationArms[4] = {"none", "noise_only", "chroma_only", "noise_chroma"};

std::unique_ptr<DenoiseBackend> make_backend(const BackendConfig& cfg) {
    if (cfg.kind == "toy") return std::make_unique<ToyBackend>(cfg.toy);
    if (cfg.kind == "remote") {
        RemoteConfig rc = cfg.remote;
        if (rc.base_url.empty()) rc = RemoteConfig::from_env();
        return std::make_unique<RemoteBackend>(rc);
    }
    throw ConfigError("backend kind must be 'toy' or 'remote'");
}

namespace {

std::vector<std::string> list_pngs(const std::string& dir) {
    if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir);
    std::vector<std::string> out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".png") {
            out.push_back(entry.path().string());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> resolve_masks(const JobConfig& cfg) {
    std::vector<std::string> masks = cfg.masks;
    if (!cfg.mask_dir.empty()) {
        const auto found = list_pngs(cfg.mask_dir);
        masks.insert(masks.end(), found.begin(), found.end());
    }
    if (masks.empty()) throw DataError("no input masks configured");
    return masks;
}

ChannelStats resolve_style(const std::string& style, std::uint64_t style_seed,
                           const std::optional<ChannelStats>& reference) {
    if (style == "random") return random_style(style_seed);
    if (style == "mask") {
        // identity stats: the styled field reduces to the mask itself
        ChannelStats s;
        s.mu = {0.0, 0.0, 0.0};
        s.sigma = {1.0, 1.0, 1.0};
        s.n_pixels = 1;
        return s;
    }
    return *reference;
}

std::string record_id(std::size_t index) {
    std::ostringstream os;
    os << "r" << std::setw(5) << std::setfill('0') << index;
    return os.str();
}

struct RecordPlan {
    std::size_t index;
    std::string id;
    std::string mask_path;
    std::size_t mask_index;
};

ManifestRecord run_record(const RecordPlan& plan, const BinaryMask& mask, const JobConfig& cfg,
                          const std::optional<ChannelStats>& reference, DenoiseBackend& backend,
                          const Schedule& sched) {
    ManifestRecord record;
    record.id = plan.id;
    record.mask_path = plan.mask_path;
    record.style_seed = derive_seed(cfg.seed, hash_string("style"), plan.index);

    record.noise = cfg.noise;
    record.noise.seed = derive_seed(cfg.seed, hash_string("noise"), plan.index);
    record.chroma = cfg.chroma;
    record.chroma.seed = derive_seed(cfg.seed, hash_string("chroma"), plan.index);
    record.diffusion = cfg.diffusion;
    record.diffusion.seed = derive_seed(cfg.seed, hash_string("diffusion"), plan.index);

    try {
        const ChannelStats style = resolve_style(cfg.style, record.style_seed, reference);
        const ImageRGB staged = apply_prism(mask, style, record.noise, record.chroma);

        ImageRGB generated;
        if (backend.supports(Capability::full_img2img)) {
            generated = backend.img2img(staged, record.diffusion);
        } else {
            generated = img2img(staged, backend, record.diffusion, sched).image.clipped();
        }

        const std::string rel = "images/" + plan.id + ".png";
        save_image(generated, (fs::path(cfg.output_dir) / rel).string());
        record.image_path = rel;
        record.status = RecordStatus::ok;
    } catch (const std::exception& e) {
        record.status = RecordStatus::failed;
        record.error = e.what();
    }
    return record;
}

}  // namespace

RunSummary generate_dataset(const JobConfig& cfg, DenoiseBackend& backend,
                            const GenerateOptions& options) {
    cfg.validate();
    const std::vector<std::string> mask_paths = resolve_masks(cfg);

    fs::create_directories(fs::path(cfg.output_dir) / "images");
    const std::string manifest_path = (fs::path(cfg.output_dir) / "manifest.jsonl").string();

    std::map<std::string, ManifestRecord> completed;
    if (fs::exists(manifest_path)) {
        if (options.resume) {
            for (auto& r : read_manifest_latest(manifest_path)) {
                const bool image_present =
                    r.status == RecordStatus::ok &&
                    fs::exists(fs::path(cfg.output_dir) / r.image_path);
                if (image_present) completed.emplace(r.id, std::move(r));
            }
        } else if (!options.force) {
            throw ConfigError("output directory already holds a run: " + cfg.output_dir +
                              " (pass force to overwrite or resume to continue)");
        }
    }

    // one config echo per run, all defaults materialized
    save_job_config(cfg, (fs::path(cfg.output_dir) / "config_echo.json").string());

    const bool append = options.resume && fs::exists(manifest_path);
    ManifestWriter writer(manifest_path, /*truncate=*/!append);

    // masks loaded once up front; a broken mask file fails the whole run
    std::vector<BinaryMask> masks;
    masks.reserve(mask_paths.size());
    for (const auto& path : mask_paths) masks.push_back(load_mask(path));

    std::optional<ChannelStats> reference;
    if (cfg.style != "random" && cfg.style != "mask") {
        reference = channel_stats(load_image(cfg.style));
    }

    const Schedule sched = make_schedule(cfg.schedule.T, cfg.schedule.beta_start,
                                         cfg.schedule.beta_end);

    std::vector<RecordPlan> plans;
    for (std::size_t m = 0; m < mask_paths.size(); ++m) {
        for (int s = 0; s < cfg.samples_per_mask; ++s) {
            RecordPlan plan;
            plan.index = plans.size();
            plan.id = record_id(plan.index);
            plan.mask_path = mask_paths[m];
            plan.mask_index = m;
            plans.push_back(std::move(plan));
        }
    }

    RunSummary summary;
    summary.manifest_path = manifest_path;
    summary.records.resize(plans.size());

    std::mutex mu;
    std::condition_variable cv;
    std::map<std::size_t, ManifestRecord> done;  // out-of-order completions
    std::size_t next_to_write = 0;
    std::atomic<std::size_t> next_task{0};

    auto worker = [&]() {
        while (true) {
            const std::size_t i = next_task.fetch_add(1);
            if (i >= plans.size()) break;
            const RecordPlan& plan = plans[i];

            ManifestRecord record;
            bool skipped = false;
            if (auto it = completed.find(plan.id); it != completed.end()) {
                record = it->second;
                skipped = true;
            } else {
                record = run_record(plan, masks[plan.mask_index], cfg, reference, backend, sched);
            }

            std::unique_lock<std::mutex> lock(mu);
            done.emplace(i, std::move(record));
            if (skipped) ++summary.n_skipped;
            // the manifest is the single serialization point: records leave
            // the buffer strictly in id order
            while (true) {
                auto ready = done.find(next_to_write);
                if (ready == done.end()) break;
                ManifestRecord out = std::move(ready->second);
                done.erase(ready);
                const bool was_skipped = completed.count(out.id) > 0;
                if (!was_skipped) writer.append(out);
                if (out.status == RecordStatus::ok) ++summary.n_ok;
                else ++summary.n_failed;
                summary.records[next_to_write] = std::move(out);
                ++next_to_write;
            }
            cv.notify_all();
        }
    };

    const int n_workers = std::max(1, std::min<int>(cfg.workers, static_cast<int>(plans.size())));
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(n_workers));
    for (int i = 0; i < n_workers; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    return summary;
}

RunSummary generate_dataset(const JobConfig& cfg, const GenerateOptions& options) {
    auto backend = make_backend(cfg.backend);
    return generate_dataset(cfg, *backend, options);
}

namespace {

std::vector<ImageRGB> load_ok_images(const JobConfig& cfg, const RunSummary& summary) {
    std::vector<ImageRGB> images;
    for (const auto& r : summary.records) {
        if (r.status != RecordStatus::ok) continue;
        images.push_back(load_image((fs::path(cfg.output_dir) / r.image_path).string()));
    }
    return images;
}

// Metrics for one finished run; which ones depends on cfg.eval and the
// backend's capabilities.
ReportRow evaluate_run(const JobConfig& cfg, const RunSummary& summary, DenoiseBackend& backend,
                       const std::string& label, double param) {
    ReportRow row;
    row.label = label;
    row.param = param;

    const std::vector<ImageRGB> images = load_ok_images(cfg, summary);
    row.sample_count = images.size();
    if (images.empty()) return row;

    if (backend.supports(Capability::extract_features)) {
        std::vector<std::vector<double>> features;
        features.reserve(images.size());
        for (const auto& img : images) features.push_back(backend.extract_features(img));

        if (features.size() >= 2) {
            row.values["diversity"] = mean_pairwise_distance(features);
        }

        if (cfg.eval.fid) {
            if (cfg.eval.reference_dir.empty()) {
                throw ConfigError("FID is enabled but no reference_dir is configured");
            }
            std::vector<std::vector<double>> ref_features;
            for (const auto& path : list_pngs(cfg.eval.reference_dir)) {
                ref_features.push_back(backend.extract_features(load_image(path)));
            }
            if (ref_features.size() < 2 || features.size() < 2) {
                throw DataError("FID needs at least 2 generated and 2 reference images");
            }
            const double fid = frechet_distance(gaussian_stats(features),
                                                gaussian_stats(ref_features));
            row.values["fid"] = fid;
            row.values["nfid"] = nfid(fid, cfg.eval.nfid_normalizer);
        }
    }

    if (cfg.eval.entropy) {
        double total = 0.0;
        for (const auto& img : images) total += shannon_entropy(img);
        row.values["entropy_bits"] = total / static_cast<double>(images.size());
    }

    if (cfg.eval.clip && backend.supports(Capability::embed_image) &&
        backend.supports(Capability::embed_text)) {
        const std::vector<double> text_vec = backend.embed_text(cfg.diffusion.prompt);
        double total = 0.0;
        for (const auto& img : images) {
            total += clip_score(backend.embed_image(img), text_vec);
        }
        row.values["clip_score"] = total / static_cast<double>(images.size());
    }

    if (cfg.eval.ssim && images.size() >= 2) {
        // even records train the recovery model, odd records are held out
        std::vector<std::pair<ImageRGB, BinaryMask>> train;
        std::vector<std::pair<const ImageRGB*, BinaryMask>> held_out;
        std::size_t ok_index = 0;
        for (const auto& r : summary.records) {
            if (r.status != RecordStatus::ok) continue;
            BinaryMask mask = load_mask(r.mask_path);
            if (ok_index % 2 == 0) train.emplace_back(images[ok_index], std::move(mask));
            else held_out.emplace_back(&images[ok_index], std::move(mask));
            ++ok_index;
        }
        if (!train.empty() && !held_out.empty()) {
            try {
                const MaskClassifier clf = train_mask_classifier(train, cfg.seed);
                double total = 0.0;
                for (const auto& [img, mask] : held_out) {
                    total += morphology_similarity(*img, mask, clf);
                }
                row.values["ssim"] = total / static_cast<double>(held_out.size());
            } catch (const DataError&) {
                // all-one-class training data: leave the metric unset
            }
        }
    }
    return row;
}

std::string format_sigma(double sigma) {
    std::ostringstream os;
    os << sigma;
    return os.str();
}

}  // namespace

SweepReport run_noise_sweep(const JobConfig& cfg, const std::vector<double>& sigmas,
                            DenoiseBackend& backend) {
    if (sigmas.empty()) throw ConfigError("sweep needs at least one sigma");
    if (cfg.eval.fid && cfg.eval.reference_dir.empty()) {
        throw ConfigError("FID is enabled but no reference_dir is configured");
    }
    SweepReport report;
    report.axis = "noise_sigma";
    for (double sigma : sigmas) {
        if (sigma < 0.0) throw ConfigError("noise sigma must be >= 0");
        JobConfig point = cfg;
        point.noise.sigma = sigma;
        point.output_dir =
            (fs::path(cfg.output_dir) / ("sigma_" + format_sigma(sigma))).string();
        const RunSummary summary = generate_dataset(point, backend, {.force = true});
        report.rows.push_back(
            evaluate_run(point, summary, backend, "sigma=" + format_sigma(sigma), sigma));
    }
    return report;
}

SweepReport run_noise_sweep(const JobConfig& cfg, const std::vector<double>& sigmas) {
    auto backend = make_backend(cfg.backend);
    return run_noise_sweep(cfg, sigmas, *backend);
}

NoiseTypeReport run_noise_type_study(const JobConfig& cfg, const std::vector<NoiseKind>& kinds,
                                     DenoiseBackend& backend) {
    if (kinds.empty()) throw ConfigError("noise-type study needs at least one kind");
    NoiseTypeReport report;
    report.axis = "noise_kind";
    for (std::size_t k = 0; k < kinds.size(); ++k) {
        JobConfig point = cfg;
        point.noise.kind = kinds[k];
        point.output_dir = (fs::path(cfg.output_dir) / to_string(kinds[k])).string();
        const RunSummary summary = generate_dataset(point, backend, {.force = true});

        ReportRow row = evaluate_run(point, summary, backend, to_string(kinds[k]),
                                     static_cast<double>(k));

        // re-derive the deterministic intermediates from the recorded seeds
        std::optional<ChannelStats> reference;
        if (point.style != "random" && point.style != "mask") {
            reference = channel_stats(load_image(point.style));
        }
        double field_bits = 0.0;
        double input_bits = 0.0;
        std::size_t n = 0;
        for (const auto& r : summary.records) {
            if (r.status != RecordStatus::ok) continue;
            const BinaryMask mask = load_mask(r.mask_path);
            const NoiseField field = sample_noise(r.noise, mask.height(), mask.width());
            field_bits += shannon_entropy_values(field.values.values);
            const ChannelStats style = resolve_style(point.style, r.style_seed, reference);
            input_bits += shannon_entropy(apply_prism(mask, style, r.noise, r.chroma));
            ++n;
        }
        if (n > 0) {
            row.values["field_entropy_bits"] = field_bits / static_cast<double>(n);
            row.values["input_entropy_bits"] = input_bits / static_cast<double>(n);
            if (row.values.count("entropy_bits")) {
                row.values["output_entropy_bits"] = row.values["entropy_bits"];
                row.values.erase("entropy_bits");
            }
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

NoiseTypeReport run_noise_type_study(const JobConfig& cfg, const std::vector<NoiseKind>& kinds) {
    auto backend = make_backend(cfg.backend);
    return run_noise_type_study(cfg, kinds, *backend);
}

AblationReport run_ablation(const JobConfig& cfg, DenoiseBackend& backend) {
    AblationReport report;
    report.axis = "arm";
    for (int arm = 0; arm < 4; ++arm) {
        JobConfig point = cfg;
        const std::string name = kAblationArms[arm];
        if (name == "none") {
            // raw mask straight into the diffusion stage
            point.style = "mask";
            point.noise.sigma = 0.0;
            point.noise.mu = 0.0;
            point.chroma.mode = ChromaMode::none;
        } else if (name == "noise_only") {
            point.chroma.mode = ChromaMode::none;
        } else if (name == "chroma_only") {
            point.noise.sigma = 0.0;
            point.noise.mu = 0.0;
        }
        point.output_dir = (fs::path(cfg.output_dir) / ("arm_" + name)).string();
        const RunSummary summary = generate_dataset(point, backend, {.force = true});
        report.rows.push_back(
            evaluate_run(point, summary, backend, name, static_cast<double>(arm)));
    }
    return report;
}

AblationReport run_ablation(const JobConfig& cfg) {
    auto backend = make_backend(cfg.backend);
    return run_ablation(cfg, *backend);
}

StudyReport evaluate_manifest(const std::string& manifest_path, const std::string& run_dir,
                              const EvalConfig& eval, DenoiseBackend& backend) {
    const std::vector<ManifestRecord> records = read_manifest_latest(manifest_path);
    if (records.empty()) throw DataError("manifest holds no records");

    JobConfig shim;
    shim.output_dir = run_dir;
    shim.eval = eval;
    // prompt for CLIP comes from the generation echo
    for (const auto& r : records) {
        if (r.status == RecordStatus::ok) {
            shim.diffusion = r.diffusion;
            break;
        }
    }

    RunSummary summary;
    summary.records = records;
    for (const auto& r : records) {
        if (r.status == RecordStatus::ok) ++summary.n_ok;
        else ++summary.n_failed;
    }

    StudyReport report;
    report.axis = "manifest";
    report.rows.push_back(evaluate_run(shim, summary, backend, "all", 0.0));
    return report;
}

}  // namespace prism
