#include "octocloud/synth.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include <json.hpp>

#include "octocloud/errors.hpp"

namespace octocloud {

namespace {

using Cell = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>;  // (i, j, k)

// Uniform double in [0, 1) from raw engine output; avoids the
// implementation-defined std::uniform_real_distribution so fixtures are
// reproducible everywhere.
double unit_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct GridGeometry {
    const FixtureSpec& spec;
    std::uint32_t n;  // cells per edge

    [[nodiscard]] double step_y() const { return spec.y_extent / n; }
    [[nodiscard]] double step_x() const { return spec.x_extent / n; }
    [[nodiscard]] double step_z() const { return spec.z_extent / n; }

    [[nodiscard]] GeoPoint center(const Cell& cell) const {
        const auto [i, j, k] = cell;
        GeoPoint p;
        p.y = spec.y0 + (i + 0.5) * step_y();
        p.x = spec.x0 + (j + 0.5) * step_x();
        p.z = spec.z0 + (k + 0.5) * step_z();
        return p;
    }
};

// Occupied-node counts per level 0..L for the cell set, computed by
// collapsing addresses with integer shifts. This is the sidecar's own
// arithmetic; it never touches the octree code under test.
std::vector<std::size_t> ancestors_per_level(const std::set<Cell>& cells, int level) {
    std::vector<std::size_t> counts(static_cast<std::size_t>(level) + 1, 0);
    for (int l = 0; l <= level; ++l) {
        const int shift = level - l;
        std::set<Cell> collapsed;
        for (const auto& [i, j, k] : cells)
            collapsed.insert(Cell{i >> shift, j >> shift, k >> shift});
        counts[static_cast<std::size_t>(l)] = collapsed.size();
    }
    return counts;
}

void emit_cell_points(const GridGeometry& geo, const Cell& cell, int points_per_cell,
                      std::mt19937_64& rng, PointCloud& cloud) {
    const GeoPoint center = geo.center(cell);
    cloud.points.push_back(center);
    for (int extra = 1; extra < points_per_cell; ++extra) {
        GeoPoint p = center;
        p.y += (unit_double(rng) - 0.5) * 0.6 * geo.step_y();
        p.x += (unit_double(rng) - 0.5) * 0.6 * geo.step_x();
        p.z += (unit_double(rng) - 0.5) * 0.6 * geo.step_z();
        cloud.points.push_back(p);
    }
}

GeoPoint corner_min(const FixtureSpec& s) { return GeoPoint{s.y0, s.x0, s.z0, {}}; }

GeoPoint corner_max(const FixtureSpec& s) {
    return GeoPoint{s.y0 + s.y_extent, s.x0 + s.x_extent, s.z0 + s.z_extent, {}};
}

}  // namespace

Fixture make_fixture(const FixtureSpec& spec) {
    if (spec.level < 1 || spec.level > 10)
        throw ConfigError("fixture level must be in [1, 10]");
    if (spec.kind == FixtureKind::Canopy && spec.level < 2)
        throw ConfigError("canopy fixture needs level >= 2 to hold a gap");
    if (spec.points_per_cell < 1) throw ConfigError("points_per_cell must be >= 1");
    if (!(spec.y_extent > 0.0 && spec.x_extent > 0.0 && spec.z_extent > 0.0))
        throw ConfigError("fixture extents must be positive");

    const std::uint32_t n = 1u << spec.level;
    const GridGeometry geo{spec, n};
    std::mt19937_64 rng(spec.seed);

    std::set<Cell> cells;
    std::vector<GeoPoint> anchors;
    std::optional<std::size_t> surface, above, gap;

    switch (spec.kind) {
        case FixtureKind::Terraced: {
            // Diagonal ramp: column (i, j) occupied at k = i, plus the riser
            // cell k = i-1. Every column is a contiguous run, so everything
            // is surface.
            for (std::uint32_t i = 0; i < n; ++i)
                for (std::uint32_t j = 0; j < n; ++j) {
                    cells.insert(Cell{i, j, i});
                    if (i > 0) cells.insert(Cell{i, j, i - 1});
                }
            // Box corners sit in occupied cells (0,0,0) and (n-1,n-1,n-1).
            anchors.push_back(corner_min(spec));
            anchors.push_back(corner_max(spec));
            surface = cells.size();
            above = 0;
            gap = 0;
            break;
        }
        case FixtureKind::Canopy: {
            // Flat ground at k = 0 with a centered canopy patch at the top
            // cell layer, leaving n-2 empty cells under each canopy cell.
            const std::uint32_t w = std::max(1u, n / 4);
            const std::uint32_t start = (n - w) / 2;
            for (std::uint32_t i = 0; i < n; ++i)
                for (std::uint32_t j = 0; j < n; ++j) cells.insert(Cell{i, j, 0});
            for (std::uint32_t i = start; i < start + w; ++i)
                for (std::uint32_t j = start; j < start + w; ++j)
                    cells.insert(Cell{i, j, n - 1});
            anchors.push_back(corner_min(spec));
            // y and x maxima on the far ground cell, z maximum in a canopy cell.
            GeoPoint far_ground = geo.center(Cell{n - 1, n - 1, 0});
            far_ground.y = spec.y0 + spec.y_extent;
            far_ground.x = spec.x0 + spec.x_extent;
            anchors.push_back(far_ground);
            GeoPoint canopy_top = geo.center(Cell{start, start, n - 1});
            canopy_top.z = spec.z0 + spec.z_extent;
            anchors.push_back(canopy_top);
            surface = static_cast<std::size_t>(n) * n;
            above = static_cast<std::size_t>(w) * w;
            gap = static_cast<std::size_t>(w) * w * (n - 2);
            break;
        }
        case FixtureKind::Noise: {
            cells.insert(Cell{0, 0, 0});
            cells.insert(Cell{n - 1, n - 1, n - 1});
            const std::size_t target = static_cast<std::size_t>(n) * n;
            while (cells.size() < target + 2) {
                cells.insert(Cell{static_cast<std::uint32_t>(rng() % n),
                                  static_cast<std::uint32_t>(rng() % n),
                                  static_cast<std::uint32_t>(rng() % n)});
            }
            anchors.push_back(corner_min(spec));
            anchors.push_back(corner_max(spec));
            break;
        }
    }

    Fixture fixture;
    fixture.level = spec.level;
    fixture.cloud.axis_order = AxisOrder::GeoYxz;
    fixture.cloud.points = anchors;
    for (const Cell& cell : cells)
        emit_cell_points(geo, cell, spec.points_per_cell, rng, fixture.cloud);

    fixture.occupied_per_level = ancestors_per_level(cells, spec.level);
    fixture.occupied_leaves = cells.size();
    fixture.total_nodes = 0;
    for (std::size_t count : fixture.occupied_per_level) fixture.total_nodes += count;
    fixture.surface_cells = surface;
    fixture.above_cells = above;
    fixture.gap_cells = gap;
    return fixture;
}

std::string expected_counts_json(const Fixture& fixture) {
    nlohmann::json j;
    j["level"] = fixture.level;
    j["points"] = fixture.cloud.size();
    j["cuboids_per_level"] = fixture.occupied_per_level;
    j["total_cuboids"] = fixture.total_nodes;
    j["occupied_leaves"] = fixture.occupied_leaves;
    if (fixture.surface_cells)
        j["surface"] = *fixture.surface_cells;
    else
        j["surface"] = nullptr;
    if (fixture.above_cells)
        j["above"] = *fixture.above_cells;
    else
        j["above"] = nullptr;
    if (fixture.gap_cells)
        j["gap"] = *fixture.gap_cells;
    else
        j["gap"] = nullptr;
    return j.dump(2) + "\n";
}

FixtureKind fixture_kind_from_name(std::string_view name) {
    if (name == "terraced") return FixtureKind::Terraced;
    if (name == "canopy") return FixtureKind::Canopy;
    if (name == "noise") return FixtureKind::Noise;
    throw ConfigError("unknown fixture kind '" + std::string(name) +
                      "', expected terraced|canopy|noise");
}

std::string_view fixture_kind_name(FixtureKind kind) {
    switch (kind) {
        case FixtureKind::Terraced: return "terraced";
        case FixtureKind::Canopy: return "canopy";
        case FixtureKind::Noise: return "noise";
    }
    return "terraced";  // unreachable
}

}  // namespace octocloud
