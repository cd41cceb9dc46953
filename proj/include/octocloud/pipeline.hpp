#pragma once

#include <filesystem>
#include <iosfwd>

#include "octocloud/point_io.hpp"
#include "octocloud/report.hpp"

namespace octocloud {

enum class ExportFormat {
    Ply,
    Obj,
};

// One pipeline invocation: ingest -> normalize -> octree -> classify ->
// reduce -> export/report. Defaults follow the common field setup: depth 5,
// geographic axis order, normalization on.
struct RunConfig {
    std::filesystem::path input;
    std::filesystem::path output;  // required by commands that export
    int level = 5;
    AxisOrder axis_order = AxisOrder::GeoYxz;
    bool normalize = true;
    ExportFormat format = ExportFormat::Ply;
    bool boxes = false;  // voxelize: cell corner boxes instead of centers
    ReportFormat report_format = ReportFormat::Text;
    ClassColorMap colors;
};

// Runs the pipeline through classification and prints the report; writes
// no files.
RunReport cmd_stats(const RunConfig& config, std::ostream& report_out);

// Exports one class-colored vertex per classified cell (occupied and gap)
// and prints the report.
RunReport cmd_classify(const RunConfig& config, std::ostream& report_out);

// Exports the merged cloud and prints the report.
RunReport cmd_reduce(const RunConfig& config, std::ostream& report_out);

// Exports occupied max-level cells as center points, or as 8-corner boxes
// in OBJ when config.boxes is set.
RunReport cmd_voxelize(const RunConfig& config, std::ostream& report_out);

}  // namespace octocloud
