#include "octocloud/report.hpp"

#include <array>
#include <charconv>
#include <numeric>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "octocloud/errors.hpp"

namespace octocloud {

namespace {

// Shortest round-trip notation, so rendered reports parse back to equal
// values.
std::string format_double(double v) {
    std::array<char, 64> buf;
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

void check(bool ok, const char* what) {
    if (!ok) throw IntegrityError(std::string("build_report: ") + what);
}

}  // namespace

RunReport build_report(std::size_t input_points, const LevelStats& stats,
                       const ClassifiedGrid& grid,
                       const std::optional<ReductionSummary>& reduction,
                       const StageTimings& timings, bool normalization_fallback) {
    check(!stats.occupied_per_level.empty(), "missing level counts");
    check(stats.occupied_per_level.front() == 1, "level-0 count must be 1");
    check(grid.level + 1 == static_cast<int>(stats.occupied_per_level.size()),
          "classified level does not match tree depth");
    const std::size_t level_sum = std::accumulate(stats.occupied_per_level.begin(),
                                                  stats.occupied_per_level.end(), std::size_t{0});
    check(level_sum == stats.total_nodes, "per-level counts do not sum to total");
    check(stats.occupied_per_level.back() == stats.occupied_leaves,
          "leaf count does not match last level");

    const std::size_t surface = grid.count(CellClass::Surface);
    const std::size_t above = grid.count(CellClass::Above);
    check(surface + above == stats.occupied_leaves, "class tally does not match occupied leaves");

    RunReport report;
    report.input_points = input_points;
    report.level = grid.level;
    report.occupied_per_level = stats.occupied_per_level;
    report.total_nodes = stats.total_nodes;
    report.occupied_leaves = stats.occupied_leaves;
    report.surface_cells = surface;
    report.above_cells = above;
    report.gap_cells = grid.count(CellClass::Gap);
    if (reduction) {
        report.merged_points = reduction->merged_points;
        report.reduction_ratio = reduction->ratio;
    }
    report.timings = timings;
    report.normalization_fallback = normalization_fallback;
    return report;
}

namespace {

std::string render_text(const RunReport& r) {
    std::ostringstream out;
    out << "points: " << r.input_points << '\n';
    out << "level: " << r.level << '\n';
    out << "cuboids-per-level:";
    for (std::size_t count : r.occupied_per_level) out << ' ' << count;
    out << '\n';
    out << "total-cuboids: " << r.total_nodes << '\n';
    out << "occupied-leaves: " << r.occupied_leaves << '\n';
    out << "surface: " << r.surface_cells << '\n';
    out << "above: " << r.above_cells << '\n';
    out << "gap: " << r.gap_cells << '\n';
    if (r.merged_points) out << "merged-points: " << *r.merged_points << '\n';
    if (r.reduction_ratio) out << "reduction-ratio: " << format_double(*r.reduction_ratio) << '\n';
    out << "normalization-fallback: " << (r.normalization_fallback ? "yes" : "no") << '\n';
    out << "timing-parse: " << format_double(r.timings.parse) << '\n';
    out << "timing-normalize: " << format_double(r.timings.normalize) << '\n';
    out << "timing-build: " << format_double(r.timings.build) << '\n';
    out << "timing-classify: " << format_double(r.timings.classify) << '\n';
    out << "timing-reduce: " << format_double(r.timings.reduce) << '\n';
    out << "timing-export: " << format_double(r.timings.export_) << '\n';
    return out.str();
}

std::string render_structured(const RunReport& r) {
    nlohmann::json j;
    j["points"] = r.input_points;
    j["level"] = r.level;
    j["cuboids_per_level"] = r.occupied_per_level;
    j["total_cuboids"] = r.total_nodes;
    j["occupied_leaves"] = r.occupied_leaves;
    j["surface"] = r.surface_cells;
    j["above"] = r.above_cells;
    j["gap"] = r.gap_cells;
    if (r.merged_points)
        j["merged_points"] = *r.merged_points;
    else
        j["merged_points"] = nullptr;
    if (r.reduction_ratio)
        j["reduction_ratio"] = *r.reduction_ratio;
    else
        j["reduction_ratio"] = nullptr;
    j["normalization_fallback"] = r.normalization_fallback;
    j["timings"] = {{"parse", r.timings.parse},       {"normalize", r.timings.normalize},
                    {"build", r.timings.build},       {"classify", r.timings.classify},
                    {"reduce", r.timings.reduce},     {"export", r.timings.export_}};
    return j.dump(2) + "\n";
}

RunReport parse_structured(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report JSON: ") + e.what());
    }
    try {
        RunReport r;
        r.input_points = j.at("points").get<std::size_t>();
        r.level = j.at("level").get<int>();
        r.occupied_per_level = j.at("cuboids_per_level").get<std::vector<std::size_t>>();
        r.total_nodes = j.at("total_cuboids").get<std::size_t>();
        r.occupied_leaves = j.at("occupied_leaves").get<std::size_t>();
        r.surface_cells = j.at("surface").get<std::size_t>();
        r.above_cells = j.at("above").get<std::size_t>();
        r.gap_cells = j.at("gap").get<std::size_t>();
        if (!j.at("merged_points").is_null())
            r.merged_points = j.at("merged_points").get<std::size_t>();
        if (!j.at("reduction_ratio").is_null())
            r.reduction_ratio = j.at("reduction_ratio").get<double>();
        r.normalization_fallback = j.at("normalization_fallback").get<bool>();
        const nlohmann::json& t = j.at("timings");
        r.timings.parse = t.at("parse").get<double>();
        r.timings.normalize = t.at("normalize").get<double>();
        r.timings.build = t.at("build").get<double>();
        r.timings.classify = t.at("classify").get<double>();
        r.timings.reduce = t.at("reduce").get<double>();
        r.timings.export_ = t.at("export").get<double>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report JSON fields: ") + e.what());
    }
}

double parse_double_field(std::string_view value) {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || end != value.data() + value.size())
        throw ParseError("report: bad numeric value '" + std::string(value) + "'");
    return v;
}

std::size_t parse_size_field(std::string_view value) {
    std::size_t v = 0;
    const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || end != value.data() + value.size())
        throw ParseError("report: bad count value '" + std::string(value) + "'");
    return v;
}

RunReport parse_text(const std::string& text) {
    RunReport r;
    std::istringstream in(text);
    std::string line;
    bool saw_points = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::size_t colon = line.find(": ");
        std::string key, value;
        if (colon == std::string::npos) {
            // "cuboids-per-level:" with an empty list still carries a colon.
            if (line.back() == ':')
                key = line.substr(0, line.size() - 1);
            else
                throw ParseError("report: malformed line '" + line + "'");
        } else {
            key = line.substr(0, colon);
            value = line.substr(colon + 2);
        }
        if (key == "points") {
            r.input_points = parse_size_field(value);
            saw_points = true;
        } else if (key == "level") {
            r.level = static_cast<int>(parse_size_field(value));
        } else if (key == "cuboids-per-level") {
            std::istringstream counts(value);
            std::size_t count = 0;
            r.occupied_per_level.clear();
            while (counts >> count) r.occupied_per_level.push_back(count);
        } else if (key == "total-cuboids") {
            r.total_nodes = parse_size_field(value);
        } else if (key == "occupied-leaves") {
            r.occupied_leaves = parse_size_field(value);
        } else if (key == "surface") {
            r.surface_cells = parse_size_field(value);
        } else if (key == "above") {
            r.above_cells = parse_size_field(value);
        } else if (key == "gap") {
            r.gap_cells = parse_size_field(value);
        } else if (key == "merged-points") {
            r.merged_points = parse_size_field(value);
        } else if (key == "reduction-ratio") {
            r.reduction_ratio = parse_double_field(value);
        } else if (key == "normalization-fallback") {
            r.normalization_fallback = (value == "yes");
        } else if (key == "timing-parse") {
            r.timings.parse = parse_double_field(value);
        } else if (key == "timing-normalize") {
            r.timings.normalize = parse_double_field(value);
        } else if (key == "timing-build") {
            r.timings.build = parse_double_field(value);
        } else if (key == "timing-classify") {
            r.timings.classify = parse_double_field(value);
        } else if (key == "timing-reduce") {
            r.timings.reduce = parse_double_field(value);
        } else if (key == "timing-export") {
            r.timings.export_ = parse_double_field(value);
        } else {
            throw ParseError("report: unknown key '" + key + "'");
        }
    }
    if (!saw_points) throw ParseError("report: missing 'points' field");
    return r;
}

}  // namespace

std::string render_report(const RunReport& report, ReportFormat format) {
    return format == ReportFormat::Text ? render_text(report) : render_structured(report);
}

RunReport parse_report(const std::string& text) {
    const std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("report: empty input");
    return text[first] == '{' ? parse_structured(text) : parse_text(text);
}

}  // namespace octocloud
