#include "octocloud/pipeline.hpp"

#include <chrono>
#include <ostream>

#include "octocloud/errors.hpp"
#include "octocloud/reducer.hpp"

namespace octocloud {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct PipelineState {
    PointCloud cloud;
    BoundingBox bbox;
    OccupancyOctree tree;
    std::vector<LeafCell> leaves;
    ClassifiedGrid grid;
    LevelStats stats;
    bool normalization_fallback = false;
    StageTimings timings;
};

void check_config(const RunConfig& config, bool needs_output) {
    if (config.level < 0 || config.level > kMaxLevel)
        throw ConfigError("level must be in [0, " + std::to_string(kMaxLevel) + "]");
    if (config.input.empty()) throw ConfigError("no input path given");
    if (needs_output && config.output.empty()) throw ConfigError("no output path given");
}

// ingest -> normalize -> octree -> classify; every command starts here.
PipelineState run_through_classify(const RunConfig& config) {
    PipelineState state;

    auto start = Clock::now();
    state.cloud = parse_obj_file(config.input, config.axis_order);
    state.timings.parse = seconds_since(start);

    if (config.normalize) {
        start = Clock::now();
        NormalizeResult normalized = normalize(state.cloud);
        state.cloud = std::move(normalized.cloud);
        state.normalization_fallback = normalized.fallback;
        state.timings.normalize = seconds_since(start);
    }

    start = Clock::now();
    state.bbox = compute_bbox(state.cloud);
    state.tree = build_octree(state.cloud, state.bbox, config.level);
    state.leaves = occupied_leaves(state.tree);
    state.stats = level_stats(state.tree);
    state.timings.build = seconds_since(start);

    start = Clock::now();
    const std::vector<Column> columns = columnize(std::span(state.leaves), config.level);
    state.grid = classify_full(columns, config.level);
    state.timings.classify = seconds_since(start);

    return state;
}

void export_cloud(const PointCloud& cloud, const RunConfig& config) {
    if (config.format == ExportFormat::Ply)
        write_ply_file(cloud, config.output);
    else
        write_obj_file(cloud, config.output, config.axis_order);
}

RunReport finish(const RunConfig& config, const PipelineState& state,
                 const std::optional<ReductionSummary>& reduction, std::ostream& report_out) {
    const RunReport report =
        build_report(state.cloud.size(), state.stats, state.grid, reduction, state.timings,
                     state.normalization_fallback);
    report_out << render_report(report, config.report_format);
    return report;
}

}  // namespace

RunReport cmd_stats(const RunConfig& config, std::ostream& report_out) {
    check_config(config, false);
    const PipelineState state = run_through_classify(config);
    return finish(config, state, std::nullopt, report_out);
}

RunReport cmd_classify(const RunConfig& config, std::ostream& report_out) {
    check_config(config, true);
    PipelineState state = run_through_classify(config);

    const auto start = Clock::now();
    const PointCloud centers = classified_centers(state.grid, state.bbox, config.colors);
    export_cloud(centers, config);
    state.timings.export_ = seconds_since(start);

    return finish(config, state, std::nullopt, report_out);
}

RunReport cmd_reduce(const RunConfig& config, std::ostream& report_out) {
    check_config(config, true);
    PipelineState state = run_through_classify(config);

    auto start = Clock::now();
    const std::vector<MergedPoint> merged = reduce(state.cloud, state.tree);
    const ReductionSummary summary{merged.size(), reduction_ratio(state.cloud, merged)};
    state.timings.reduce = seconds_since(start);

    start = Clock::now();
    export_cloud(merged_cloud(merged, config.axis_order), config);
    state.timings.export_ = seconds_since(start);

    return finish(config, state, summary, report_out);
}

RunReport cmd_voxelize(const RunConfig& config, std::ostream& report_out) {
    check_config(config, true);
    PipelineState state = run_through_classify(config);

    const auto start = Clock::now();
    if (config.boxes) {
        // Corner boxes only exist as OBJ geometry.
        write_leaf_boxes_obj_file(state.leaves, state.bbox, config.output, config.axis_order);
    } else {
        export_cloud(leaf_centers(state.leaves, state.bbox), config);
    }
    state.timings.export_ = seconds_since(start);

    return finish(config, state, std::nullopt, report_out);
}

}  // namespace octocloud
