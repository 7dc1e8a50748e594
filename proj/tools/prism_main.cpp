// prism: mask-to-image augmentation CLI
//
// Subcommands: apply, generate, sweep, ablate, noise-study, eval, report.
// Exit codes: 0 success, 1 runtime error, 2 partial failure, 3 bad config.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "prism/config.hpp"
#include "prism/errors.hpp"
#include "prism/image_io.hpp"
#include "prism/pipeline.hpp"
#include "prism/report.hpp"
#include "prism/rng.hpp"
#include "prism/transform.hpp"

namespace fs = std::filesystem;
using namespace prism;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitPartial = 2;
constexpr int kExitConfig = 3;

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

std::vector<NoiseKind> parse_kind_list(const std::string& csv) {
    std::vector<NoiseKind> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(noise_kind_from_string(item));
    }
    return out;
}

void print_summary(const RunSummary& summary) {
    std::cout << "ok: " << summary.n_ok << "  failed: " << summary.n_failed;
    if (summary.n_skipped > 0) std::cout << "  skipped: " << summary.n_skipped;
    std::cout << "  manifest: " << summary.manifest_path << "\n";
}

void print_report(const StudyReport& report) {
    std::cout << report_to_csv(report);
}

int run_apply(const std::string& mask_path, const std::string& style, double sigma,
              const std::string& chroma_mode, const std::string& noise_kind,
              std::uint64_t seed, const std::string& out_dir) {
    fs::create_directories(out_dir);

    const BinaryMask mask = load_mask(mask_path);

    ChannelStats stats;
    if (style == "random") {
        stats = random_style(derive_seed(seed, hash_string("style")));
    } else {
        stats = channel_stats(load_image(style));
    }

    NoiseSpec noise;
    noise.kind = noise_kind_from_string(noise_kind);
    noise.sigma = sigma;
    noise.seed = derive_seed(seed, hash_string("noise"));

    ChromaSpec chroma;
    chroma.mode = chroma_mode_from_string(chroma_mode);
    chroma.seed = derive_seed(seed, hash_string("chroma"));

    const ImageRGB out = apply_prism(mask, stats, noise, chroma);
    const std::string out_path = (fs::path(out_dir) / "prism.png").string();
    save_image(out, out_path);

    // config echo so the transform is reproducible from the run directory
    JobConfig echo;
    echo.masks = {mask_path};
    echo.style = style;
    echo.noise = noise;
    echo.chroma = chroma;
    echo.output_dir = out_dir;
    echo.seed = seed;
    save_job_config(echo, (fs::path(out_dir) / "config_echo.json").string());

    std::cout << "wrote " << out_path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"prism: mask-to-image augmentation via pixel-space noise injection "
                 "and chromatic aberration ahead of an image-to-image diffusion backend"};
    app.require_subcommand(1);

    // apply
    auto* apply = app.add_subcommand("apply", "Run the pixel transform on one mask");
    std::string apply_mask, apply_style = "random", apply_chroma = "pixel_shuffle";
    std::string apply_kind = "gaussian", apply_out = "prism_out";
    double apply_sigma = 0.1;
    std::uint64_t apply_seed = 0;
    apply->add_option("--mask", apply_mask, "Input binary mask (PNG)")->required();
    apply->add_option("--style", apply_style, "'random' or a reference image path");
    apply->add_option("--sigma", apply_sigma, "Noise standard deviation");
    apply->add_option("--chroma", apply_chroma, "none|global_permute|pixel_shuffle|channel_offset");
    apply->add_option("--kind", apply_kind, "gaussian|salt_pepper|perlin");
    apply->add_option("--seed", apply_seed, "Seed");
    apply->add_option("--out", apply_out, "Output directory");

    // generate
    auto* generate = app.add_subcommand("generate", "Generate a dataset from a config file");
    std::string gen_config;
    bool gen_force = false, gen_resume = false;
    generate->add_option("--config", gen_config, "JSON job config")->required();
    generate->add_flag("--force", gen_force, "Overwrite an existing run directory");
    generate->add_flag("--resume", gen_resume, "Skip completed records, retry the rest");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Noise-sigma sweep with metrics per point");
    std::string sweep_config, sweep_sigmas = "0,0.01,0.05,0.1,0.5,1.0";
    sweep->add_option("--config", sweep_config, "JSON job config")->required();
    sweep->add_option("--sigmas", sweep_sigmas, "Comma-separated sigma list");

    // ablate
    auto* ablate = app.add_subcommand("ablate", "Four-arm component ablation");
    std::string ablate_config;
    ablate->add_option("--config", ablate_config, "JSON job config")->required();

    // noise-study
    auto* study = app.add_subcommand("noise-study", "Entropy study across noise kinds");
    std::string study_config, study_kinds = "gaussian,salt_pepper,perlin";
    study->add_option("--config", study_config, "JSON job config")->required();
    study->add_option("--kinds", study_kinds, "Comma-separated kind list");

    // eval
    auto* eval = app.add_subcommand("eval", "Metrics over an existing manifest");
    std::string eval_manifest, eval_reference, eval_out;
    double eval_normalizer = 1.0;
    bool eval_fid = false, eval_clip = false;
    eval->add_option("--manifest", eval_manifest, "manifest.jsonl path")->required();
    eval->add_option("--reference", eval_reference, "Reference image directory for FID");
    eval->add_option("--nfid-normalizer", eval_normalizer, "Normalizer for nFID");
    eval->add_option("--out", eval_out, "Report output directory (default: print CSV)");
    eval->add_flag("--clip", eval_clip, "Compute CLIP score when the backend supports it");

    // report
    auto* report_cmd = app.add_subcommand("report", "Render CSV + charts from a report JSON");
    std::string report_in, report_out;
    report_cmd->add_option("--in", report_in, "Study report JSON")->required();
    report_cmd->add_option("--out", report_out, "Output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (apply->parsed()) {
            return run_apply(apply_mask, apply_style, apply_sigma, apply_chroma, apply_kind,
                             apply_seed, apply_out);
        }

        if (generate->parsed()) {
            const JobConfig cfg = load_job_config(gen_config);
            const RunSummary summary =
                generate_dataset(cfg, {.force = gen_force, .resume = gen_resume});
            print_summary(summary);
            return summary.exit_code();
        }

        if (sweep->parsed()) {
            const JobConfig cfg = load_job_config(sweep_config);
            const SweepReport report = run_noise_sweep(cfg, parse_double_list(sweep_sigmas));
            emit_report(report, (fs::path(cfg.output_dir) / "report").string());
            print_report(report);
            return kExitOk;
        }

        if (ablate->parsed()) {
            const JobConfig cfg = load_job_config(ablate_config);
            const AblationReport report = run_ablation(cfg);
            emit_report(report, (fs::path(cfg.output_dir) / "report").string());
            print_report(report);
            return kExitOk;
        }

        if (study->parsed()) {
            const JobConfig cfg = load_job_config(study_config);
            const NoiseTypeReport report =
                run_noise_type_study(cfg, parse_kind_list(study_kinds));
            emit_report(report, (fs::path(cfg.output_dir) / "report").string());
            print_report(report);
            return kExitOk;
        }

        if (eval->parsed()) {
            EvalConfig ec;
            ec.fid = !eval_reference.empty() || eval_fid;
            ec.clip = eval_clip;
            ec.nfid_normalizer = eval_normalizer;
            ec.reference_dir = eval_reference;

            const std::string run_dir = fs::path(eval_manifest).parent_path().string();
            BackendConfig bc;
            if (std::getenv("PRISM_BACKEND_URL")) bc.kind = "remote";
            auto backend = make_backend(bc);
            const StudyReport report = evaluate_manifest(eval_manifest, run_dir, ec, *backend);
            if (!eval_out.empty()) emit_report(report, eval_out);
            print_report(report);
            return kExitOk;
        }

        if (report_cmd->parsed()) {
            std::ifstream in(report_in);
            if (!in) throw IoError("cannot open report: " + report_in);
            std::ostringstream buffer;
            buffer << in.rdbuf();
            const StudyReport report = study_report_from_json(buffer.str());
            const auto files = emit_report(report, report_out);
            for (const auto& f : files) std::cout << "wrote " << report_out << "/" << f << "\n";
            return kExitOk;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
