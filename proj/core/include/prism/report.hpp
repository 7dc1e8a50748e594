#pragma once

#include <string>

#include "prism/pipeline.hpp"

namespace prism {

// CSV with one row per report point, columns sorted for byte-stable output.
std::string report_to_csv(const StudyReport& report);

// Persisted form consumed by `prism report`.
std::string study_report_to_json(const StudyReport& report);
StudyReport study_report_from_json(const std::string& text);

// Writes report.json, report.csv, and static chart images: one metric-vs-
// parameter curve per metric on a numeric axis, and pairwise scatter panels
// (nfid-ssim, clip-ssim, nfid-clip) whenever both metrics are present.
// Returns the list of files written, relative to out_dir.
std::vector<std::string> emit_report(const StudyReport& report, const std::string& out_dir);

}  // namespace prism
