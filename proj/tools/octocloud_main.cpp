#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "octocloud/errors.hpp"
#include "octocloud/pipeline.hpp"
#include "octocloud/synth.hpp"

namespace {

using octocloud::AxisOrder;
using octocloud::Color;
using octocloud::ExportFormat;
using octocloud::ReportFormat;
using octocloud::RunConfig;

Color parse_color(const std::string& name) {
    if (name.size() == 7 && name[0] == '#') {
        const auto hex = [&](std::size_t pos) {
            return std::stoi(name.substr(pos, 2), nullptr, 16) / 255.0;
        };
        try {
            return Color{hex(1), hex(3), hex(5)};
        } catch (const std::exception&) {
            throw octocloud::ConfigError("bad hex color '" + name + "'");
        }
    }
    if (name == "black") return {0, 0, 0};
    if (name == "white") return {1, 1, 1};
    if (name == "red") return {1, 0, 0};
    if (name == "green") return {0, 1, 0};
    if (name == "blue") return {0, 0, 1};
    if (name == "yellow") return {1, 1, 0};
    if (name == "cyan") return {0, 1, 1};
    if (name == "magenta") return {1, 0, 1};
    if (name == "orange") return {1, 0.5, 0};
    if (name == "gray" || name == "grey") return {0.5, 0.5, 0.5};
    throw octocloud::ConfigError("unknown color '" + name + "' (use a name or #rrggbb)");
}

octocloud::ClassColorMap parse_color_map(const std::string& spec) {
    std::vector<std::string> parts;
    std::size_t from = 0;
    while (true) {
        const std::size_t comma = spec.find(',', from);
        parts.push_back(spec.substr(from, comma - from));
        if (comma == std::string::npos) break;
        from = comma + 1;
    }
    if (parts.size() != 3)
        throw octocloud::ConfigError("--color-map needs three comma-separated colors "
                                     "(surface,above,gap)");
    octocloud::ClassColorMap map;
    map.surface = parse_color(parts[0]);
    map.above = parse_color(parts[1]);
    map.gap = parse_color(parts[2]);
    return map;
}

struct CommonFlags {
    RunConfig config;
    std::string axis_order = "yxz";
    std::string format = "ply";
    std::string report = "text";
    std::string color_map;
    bool no_normalize = false;
};

void add_common_options(CLI::App& cmd, CommonFlags& flags, bool with_output) {
    cmd.add_option("-i,--input", flags.config.input, "input OBJ file")->required();
    if (with_output)
        cmd.add_option("-o,--output", flags.config.output, "output file")->required();
    cmd.add_option("-l,--level", flags.config.level, "octree depth (0..10)")
        ->capture_default_str();
    cmd.add_option("--axis-order", flags.axis_order, "coordinate order on disk: yxz|xyz")
        ->check(CLI::IsMember({"yxz", "xyz"}))
        ->capture_default_str();
    cmd.add_flag("--no-normalize", flags.no_normalize, "skip coordinate normalization");
    cmd.add_option("--report", flags.report, "report format: text|structured")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();
}

void add_format_option(CLI::App& cmd, CommonFlags& flags) {
    cmd.add_option("-f,--format", flags.format, "export format: ply|obj")
        ->check(CLI::IsMember({"ply", "obj"}))
        ->capture_default_str();
}

RunConfig resolve(const CommonFlags& flags) {
    RunConfig config = flags.config;
    config.axis_order = flags.axis_order == "xyz" ? AxisOrder::Xyz : AxisOrder::GeoYxz;
    config.normalize = !flags.no_normalize;
    config.format = flags.format == "obj" ? ExportFormat::Obj : ExportFormat::Ply;
    config.report_format =
        flags.report == "structured" ? ReportFormat::Structured : ReportFormat::Text;
    if (!flags.color_map.empty()) config.colors = parse_color_map(flags.color_map);
    return config;
}

struct SynthFlags {
    std::string kind = "terraced";
    std::string output;
    std::string expected;
    octocloud::FixtureSpec spec;
};

void run_synth(const SynthFlags& flags) {
    octocloud::FixtureSpec spec = flags.spec;
    spec.kind = octocloud::fixture_kind_from_name(flags.kind);
    const octocloud::Fixture fixture = octocloud::make_fixture(spec);
    octocloud::write_obj_file(fixture.cloud, flags.output, AxisOrder::GeoYxz);
    const std::string sidecar = octocloud::expected_counts_json(fixture);
    if (flags.expected.empty()) {
        std::cout << sidecar;
    } else {
        std::ofstream out(flags.expected);
        if (!out) throw octocloud::IoError("cannot open for writing: " + flags.expected);
        out << sidecar;
        if (!out.flush()) throw octocloud::IoError("write failed: " + flags.expected);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"octree point-cloud toolkit: occupancy grids, surface/above/gap "
                 "classification, cell-merge size reduction"};
    app.require_subcommand(1);

    CommonFlags stats_flags, classify_flags, reduce_flags, voxelize_flags;
    SynthFlags synth_flags;

    CLI::App* stats = app.add_subcommand("stats", "run through classification, print the report");
    add_common_options(*stats, stats_flags, false);

    CLI::App* classify =
        app.add_subcommand("classify", "export classified cells colored by class");
    add_common_options(*classify, classify_flags, true);
    add_format_option(*classify, classify_flags);
    classify->add_option("--color-map", classify_flags.color_map,
                         "surface,above,gap colors (names or #rrggbb)");

    CLI::App* reduce = app.add_subcommand("reduce", "merge points per occupied cell and export");
    add_common_options(*reduce, reduce_flags, true);
    add_format_option(*reduce, reduce_flags);

    CLI::App* voxelize = app.add_subcommand("voxelize", "export occupied cells");
    add_common_options(*voxelize, voxelize_flags, true);
    add_format_option(*voxelize, voxelize_flags);
    voxelize->add_flag("--boxes", voxelize_flags.config.boxes,
                       "write 8-corner cell boxes as OBJ instead of center points");

    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic fixture cloud");
    synth->add_option("--kind", synth_flags.kind, "terraced|canopy|noise")
        ->check(CLI::IsMember({"terraced", "canopy", "noise"}))
        ->capture_default_str();
    synth->add_option("-o,--output", synth_flags.output, "output OBJ file")->required();
    synth->add_option("--expected", synth_flags.expected,
                      "write the expected-count sidecar JSON here (default: stdout)");
    synth->add_option("-l,--level", synth_flags.spec.level, "grid level")->capture_default_str();
    synth->add_option("--points-per-cell", synth_flags.spec.points_per_cell,
                      "points generated per occupied cell")
        ->capture_default_str();
    synth->add_option("--seed", synth_flags.spec.seed, "jitter RNG seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (stats->parsed()) {
            octocloud::cmd_stats(resolve(stats_flags), std::cout);
        } else if (classify->parsed()) {
            octocloud::cmd_classify(resolve(classify_flags), std::cout);
        } else if (reduce->parsed()) {
            octocloud::cmd_reduce(resolve(reduce_flags), std::cout);
        } else if (voxelize->parsed()) {
            if (voxelize_flags.config.boxes && voxelize->count("--format") > 0 &&
                voxelize_flags.format == "ply")
                throw octocloud::ConfigError("--boxes writes OBJ geometry; drop --format ply");
            octocloud::cmd_voxelize(resolve(voxelize_flags), std::cout);
        } else if (synth->parsed()) {
            run_synth(synth_flags);
        }
    } catch (const octocloud::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return octocloud::exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
