#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prism/diffusion_config.hpp"
#include "prism/metrics.hpp"
#include "prism/noise.hpp"
#include "prism/transform.hpp"

namespace prism {

enum class RecordStatus { ok, failed };

const char* to_string(RecordStatus s);

// One generated mask/image pair with everything needed to regenerate it.
struct ManifestRecord {
    std::string id;
    std::string mask_path;
    std::string image_path;  // set iff status == ok, relative to the run dir
    std::uint64_t style_seed = 0;
    NoiseSpec noise;      // echo, seed already derived
    ChromaSpec chroma;    // echo
    DiffusionConfig diffusion;  // echo
    std::optional<MetricReport> metrics;
    RecordStatus status = RecordStatus::ok;
    std::string error;  // set iff status == failed
};

std::string record_to_json_line(const ManifestRecord& record);
ManifestRecord record_from_json_line(const std::string& line);

// Append-only, line-delimited JSON. Records are never rewritten; a resumed
// run appends fresh attempts and readers keep the last record per id.
class ManifestWriter {
public:
    // truncate = false opens in append mode
    ManifestWriter(const std::string& path, bool truncate);
    ~ManifestWriter();

    ManifestWriter(const ManifestWriter&) = delete;
    ManifestWriter& operator=(const ManifestWriter&) = delete;

    // flushes after every record so a killed run still leaves a readable file
    void append(const ManifestRecord& record);
    const std::string& path() const { return path_; }

private:
    std::string path_;
    struct Impl;
    Impl* impl_;
};

// Every line, in file order (duplicates possible after resume).
std::vector<ManifestRecord> read_manifest(const std::string& path);
// Last record per id, in first-seen id order.
std::vector<ManifestRecord> read_manifest_latest(const std::string& path);

}  // namespace prism
