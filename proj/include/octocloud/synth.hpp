#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "octocloud/types.hpp"

namespace octocloud {

// Synthetic stand-ins for surveyed terrain, built on the integer cell grid
// of a chosen level so their occupancy and class tallies are known in
// closed form.
enum class FixtureKind {
    Terraced,  // diagonal ramp of 1-2 cell risers; every occupied cell is surface
    Canopy,    // flat ground plus a raised canopy patch; produces above cells and gaps
    Noise,     // randomly scattered occupied cells; occupancy counts only
};

struct FixtureSpec {
    FixtureKind kind = FixtureKind::Terraced;
    int level = 5;
    int points_per_cell = 3;
    std::uint64_t seed = 1u;
    // Origin and extents of the generated box. The defaults keep y and x
    // within one 10^-3 step so the digit-dropping normalization applies
    // without fallback.
    double y0 = 41.69302, x0 = 44.80102, z0 = 812.0;
    double y_extent = 8.0e-4, x_extent = 8.0e-4, z_extent = 2.5;
};

// A generated cloud plus the counts a pipeline run at the same level must
// report. Occupancy figures come from the generator's own integer cell
// set; class tallies are closed-form per kind and absent for Noise.
struct Fixture {
    PointCloud cloud;
    int level = 0;
    std::vector<std::size_t> occupied_per_level;
    std::size_t total_nodes = 0;
    std::size_t occupied_leaves = 0;
    std::optional<std::size_t> surface_cells;
    std::optional<std::size_t> above_cells;
    std::optional<std::size_t> gap_cells;
};

// Throws ConfigError on unusable parameters (level out of range for the
// kind, points_per_cell < 1).
Fixture make_fixture(const FixtureSpec& spec);

// The expected counts as JSON, the sidecar written next to generated
// fixture files.
std::string expected_counts_json(const Fixture& fixture);

FixtureKind fixture_kind_from_name(std::string_view name);
std::string_view fixture_kind_name(FixtureKind kind);

}  // namespace octocloud
