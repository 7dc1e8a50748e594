#include "prism/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "prism/errors.hpp"
#include "prism/plot.hpp"

namespace fs = std::filesystem;

namespace prism {

namespace {

std::vector<std::string> metric_columns(const StudyReport& report) {
    std::set<std::string> keys;
    for (const auto& row : report.rows) {
        for (const auto& [k, v] : row.values) keys.insert(k);
    }
    return {keys.begin(), keys.end()};
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

// points for a metric across rows, keyed on the numeric axis
PlotSeries metric_series(const StudyReport& report, const std::string& metric) {
    PlotSeries s;
    s.name = metric;
    for (const auto& row : report.rows) {
        auto it = row.values.find(metric);
        if (it == row.values.end()) continue;
        s.x.push_back(row.param);
        s.y.push_back(it->second);
    }
    return s;
}

}  // namespace

std::string report_to_csv(const StudyReport& report) {
    if (report.rows.empty()) throw DataError("report holds no rows");
    const std::vector<std::string> metrics = metric_columns(report);

    std::ostringstream os;
    os << "label," << report.axis << ",sample_count";
    for (const auto& m : metrics) os << "," << m;
    os << "\n";
    for (const auto& row : report.rows) {
        os << row.label << "," << format_double(row.param) << "," << row.sample_count;
        for (const auto& m : metrics) {
            os << ",";
            auto it = row.values.find(m);
            if (it != row.values.end()) os << format_double(it->second);
        }
        os << "\n";
    }
    return os.str();
}

std::string study_report_to_json(const StudyReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
        rows.push_back({{"label", row.label},
                        {"param", row.param},
                        {"sample_count", row.sample_count},
                        {"values", row.values}});
    }
    return nlohmann::json{{"axis", report.axis}, {"rows", rows}}.dump(2) + "\n";
}

StudyReport study_report_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("report is not valid JSON: ") + e.what());
    }
    StudyReport report;
    try {
        report.axis = j.at("axis").get<std::string>();
        for (const auto& r : j.at("rows")) {
            ReportRow row;
            row.label = r.at("label").get<std::string>();
            row.param = r.at("param").get<double>();
            row.sample_count = r.at("sample_count").get<std::size_t>();
            row.values = r.at("values").get<std::map<std::string, double>>();
            report.rows.push_back(std::move(row));
        }
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("report JSON has the wrong shape: ") + e.what());
    }
    return report;
}

std::vector<std::string> emit_report(const StudyReport& report, const std::string& out_dir) {
    if (report.rows.empty()) throw DataError("report holds no rows");
    fs::create_directories(out_dir);
    std::vector<std::string> written;

    {
        const std::string name = "report.json";
        std::ofstream out(fs::path(out_dir) / name, std::ios::trunc);
        if (!out) throw IoError("cannot write report JSON under " + out_dir);
        out << study_report_to_json(report);
        written.push_back(name);
    }
    {
        const std::string name = "report.csv";
        std::ofstream out(fs::path(out_dir) / name, std::ios::trunc);
        if (!out) throw IoError("cannot write report CSV under " + out_dir);
        out << report_to_csv(report);
        written.push_back(name);
    }

    const std::vector<std::string> metrics = metric_columns(report);

    // metric-vs-parameter curves
    for (const auto& metric : metrics) {
        PlotSeries s = metric_series(report, metric);
        if (s.x.size() < 1) continue;
        PlotSpec spec;
        spec.title = metric + " vs " + report.axis;
        spec.x_label = report.axis;
        spec.y_label = metric;
        s.name = "";
        spec.series = {std::move(s)};
        const std::string name = "curve_" + metric + ".png";
        save_plot(spec, (fs::path(out_dir) / name).string());
        written.push_back(name);
    }

    // pairwise panels across rows
    const std::vector<std::pair<std::string, std::string>> panels = {
        {"nfid", "ssim"}, {"clip_score", "ssim"}, {"nfid", "clip_score"}};
    for (const auto& [mx, my] : panels) {
        PlotSeries s;
        for (const auto& row : report.rows) {
            auto ix = row.values.find(mx);
            auto iy = row.values.find(my);
            if (ix == row.values.end() || iy == row.values.end()) continue;
            s.x.push_back(ix->second);
            s.y.push_back(iy->second);
        }
        if (s.x.size() < 2) continue;
        s.draw_line = false;
        s.name = "";
        PlotSpec spec;
        spec.title = mx + " - " + my;
        spec.x_label = mx;
        spec.y_label = my;
        spec.series = {std::move(s)};
        const std::string name = "panel_" + mx + "_" + my + ".png";
        save_plot(spec, (fs::path(out_dir) / name).string());
        written.push_back(name);
    }
    return written;
}

}  // namespace prism
