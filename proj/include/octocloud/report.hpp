#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "octocloud/classifier.hpp"
#include "octocloud/grid.hpp"

namespace octocloud {

// Wall-clock seconds per pipeline stage. Stages that did not run stay 0.
struct StageTimings {
    double parse = 0.0;
    double normalize = 0.0;
    double build = 0.0;
    double classify = 0.0;
    double reduce = 0.0;
    double export_ = 0.0;

    friend bool operator==(const StageTimings&, const StageTimings&) = default;
};

// Statistics of one pipeline run: per-level cuboid counts, occupied-leaf
// count, class tallies, optional reduction figures, timings.
struct RunReport {
    std::size_t input_points = 0;
    int level = 0;
    std::vector<std::size_t> occupied_per_level;
    std::size_t total_nodes = 0;
    std::size_t occupied_leaves = 0;
    std::size_t surface_cells = 0;
    std::size_t above_cells = 0;
    std::size_t gap_cells = 0;
    std::optional<std::size_t> merged_points;
    std::optional<double> reduction_ratio;
    bool normalization_fallback = false;
    StageTimings timings;

    friend bool operator==(const RunReport&, const RunReport&) = default;
};

enum class ReportFormat {
    Text,
    Structured,  // JSON with stable key names
};

struct ReductionSummary {
    std::size_t merged_points = 0;
    double ratio = 0.0;
};

// Assembles the report and validates cross-field consistency: class tally
// against occupied leaves, per-level sum against total, level-0 count of 1.
// Throws IntegrityError on any mismatch.
RunReport build_report(std::size_t input_points, const LevelStats& stats,
                       const ClassifiedGrid& grid,
                       const std::optional<ReductionSummary>& reduction,
                       const StageTimings& timings, bool normalization_fallback);

// Deterministic rendering; floating-point fields use shortest round-trip
// notation so a rendered report parses back to equal values.
std::string render_report(const RunReport& report, ReportFormat format);

// Inverse of render_report for both formats. Throws ParseError.
RunReport parse_report(const std::string& text);

}  // namespace octocloud
