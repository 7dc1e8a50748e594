#include "prism/manifest.hpp"

#include <fstream>
#include <map>

#include "json_codec.hpp"
#include "prism/errors.hpp"

namespace prism {

const char* to_string(RecordStatus s) {
    return s == RecordStatus::ok ? "ok" : "failed";
}

std::string record_to_json_line(const ManifestRecord& record) {
    json j{{"id", record.id},
           {"mask_path", record.mask_path},
           {"status", to_string(record.status)},
           {"style_seed", record.style_seed},
           {"noise", noise_to_json(record.noise)},
           {"chroma", chroma_to_json(record.chroma)},
           {"diffusion", diffusion_to_json(record.diffusion)}};
    if (record.status == RecordStatus::ok) {
        j["image_path"] = record.image_path;
    } else {
        j["error"] = record.error;
    }
    if (record.metrics.has_value()) j["metrics"] = metric_report_to_json(*record.metrics);
    return j.dump();
}

ManifestRecord record_from_json_line(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw FormatError(std::string("manifest line is not valid JSON: ") + e.what());
    }
    ManifestRecord r;
    r.id = j.at("id").get<std::string>();
    r.mask_path = j.at("mask_path").get<std::string>();
    const std::string status = j.at("status").get<std::string>();
    if (status == "ok") {
        r.status = RecordStatus::ok;
        r.image_path = j.at("image_path").get<std::string>();
    } else if (status == "failed") {
        r.status = RecordStatus::failed;
        r.error = j.value("error", "");
    } else {
        throw FormatError("manifest record has unknown status: " + status);
    }
    r.style_seed = j.value("style_seed", std::uint64_t{0});
    if (j.contains("noise")) r.noise = noise_from_json(j.at("noise"));
    if (j.contains("chroma")) r.chroma = chroma_from_json(j.at("chroma"));
    if (j.contains("diffusion")) r.diffusion = diffusion_from_json(j.at("diffusion"));
    if (j.contains("metrics")) r.metrics = metric_report_from_json(j.at("metrics"));
    return r;
}

struct ManifestWriter::Impl {
    std::ofstream out;
};

ManifestWriter::ManifestWriter(const std::string& path, bool truncate)
    : path_(path), impl_(new Impl) {
    impl_->out.open(path, truncate ? std::ios::trunc : std::ios::app);
    if (!impl_->out) {
        delete impl_;
        throw IoError("cannot open manifest for writing: " + path);
    }
}

ManifestWriter::~ManifestWriter() {
    delete impl_;
}

void ManifestWriter::append(const ManifestRecord& record) {
    impl_->out << record_to_json_line(record) << '\n';
    impl_->out.flush();
    if (!impl_->out) throw IoError("manifest write failed: " + path_);
}

std::vector<ManifestRecord> read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest: " + path);
    std::vector<ManifestRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        records.push_back(record_from_json_line(line));
    }
    return records;
}

std::vector<ManifestRecord> read_manifest_latest(const std::string& path) {
    const std::vector<ManifestRecord> all = read_manifest(path);
    std::vector<std::string> order;
    std::map<std::string, ManifestRecord> latest;
    for (const auto& r : all) {
        if (!latest.count(r.id)) order.push_back(r.id);
        latest[r.id] = r;
    }
    std::vector<ManifestRecord> out;
    out.reserve(order.size());
    for (const auto& id : order) out.push_back(latest[id]);
    return out;
}

}  // namespace prism
