#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "prism/backend.hpp"
#include "prism/config.hpp"
#include "prism/manifest.hpp"

namespace prism {

std::unique_ptr<DenoiseBackend> make_backend(const BackendConfig& cfg);

struct GenerateOptions {
    bool force = false;   // overwrite an existing run directory
    bool resume = false;  // keep completed ids, retry failed/missing ones
};

struct RunSummary {
    std::vector<ManifestRecord> records;  // final state, one per id
    std::string manifest_path;
    std::size_t n_ok = 0;
    std::size_t n_failed = 0;
    std::size_t n_skipped = 0;  // resume: already complete

    // 0 all ok, 2 partial failure
    int exit_code() const { return n_failed > 0 ? 2 : 0; }
};

// For each mask x sample index: resolve the style, run the pixel transform,
// push through the diffusion backend, save the image, append the record.
// Failures are recorded and the run continues. Generation may fan out over
// cfg.workers threads; manifest lines always land in record-id order.
RunSummary generate_dataset(const JobConfig& cfg, DenoiseBackend& backend,
                            const GenerateOptions& options = {});
RunSummary generate_dataset(const JobConfig& cfg, const GenerateOptions& options = {});

// Aggregated metrics for one study: rows are sweep points / arms / kinds.
struct ReportRow {
    std::string label;
    double param = 0.0;  // numeric axis position where meaningful
    std::map<std::string, double> values;
    std::size_t sample_count = 0;
};

struct StudyReport {
    std::string axis;  // "noise_sigma", "arm", "noise_kind", "manifest"
    std::vector<ReportRow> rows;
};

using SweepReport = StudyReport;
using AblationReport = StudyReport;
using NoiseTypeReport = StudyReport;

// One generation run per sigma (matched per-record seeds across points),
// then diversity / FID / SSIM / CLIP / entropy according to cfg.eval.
SweepReport run_noise_sweep(const JobConfig& cfg, const std::vector<double>& sigmas,
                            DenoiseBackend& backend);
SweepReport run_noise_sweep(const JobConfig& cfg, const std::vector<double>& sigmas);

// One run per noise kind; tabulates the entropy of the raw noise fields, the
// transformed inputs, and the generated outputs.
NoiseTypeReport run_noise_type_study(const JobConfig& cfg, const std::vector<NoiseKind>& kinds,
                                     DenoiseBackend& backend);
NoiseTypeReport run_noise_type_study(const JobConfig& cfg, const std::vector<NoiseKind>& kinds);

// Four arms with matched seeds: none / noise_only / chroma_only / noise_chroma.
AblationReport run_ablation(const JobConfig& cfg, DenoiseBackend& backend);
AblationReport run_ablation(const JobConfig& cfg);

// Metrics over an existing manifest: FID/nFID against a reference image
// directory, mask-recovery SSIM, entropy, CLIP score where supported.
StudyReport evaluate_manifest(const std::string& manifest_path, const std::string& run_dir,
                              const EvalConfig& eval, DenoiseBackend& backend);

// names of the four ablation arms, in report order
extern const char* const kAblationArms[4];

}  // namespace prism
