#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "octocloud/types.hpp"

namespace octocloud {

// Per-axis min/max of a cloud; the root cuboid of the subdivision.
struct BoundingBox {
    double y_min = 0.0, y_max = 0.0;
    double x_min = 0.0, x_max = 0.0;
    double z_min = 0.0, z_max = 0.0;

    [[nodiscard]] bool contains(const GeoPoint& p) const {
        return p.y >= y_min && p.y <= y_max && p.x >= x_min && p.x <= x_max &&
               p.z >= z_min && p.z <= z_max;
    }
};

// Integer grid address of one cuboid: (level, i, j, k) with i along y,
// j along x, k along z, each in [0, 2^level).
struct CuboidAddress {
    int level = 0;
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    std::uint32_t k = 0;

    friend bool operator==(const CuboidAddress&, const CuboidAddress&) = default;
    friend auto operator<=>(const CuboidAddress&, const CuboidAddress&) = default;
};

// Occupancy octree over a point cloud. Only occupied cuboids are stored;
// a cuboid is subdivided whenever it contains a vertex, down to max_level.
// Leaves at max_level carry the indices of the points they contain, in
// ascending order.
struct OccupancyOctree {
    struct Node {
        CuboidAddress address;
        std::array<std::int32_t, 8> children{-1, -1, -1, -1, -1, -1, -1, -1};
        std::vector<std::uint32_t> points;  // filled only at max_level

        [[nodiscard]] bool is_leaf() const {
            for (std::int32_t c : children)
                if (c >= 0) return false;
            return true;
        }
    };

    BoundingBox bbox;
    int max_level = 0;
    std::vector<Node> nodes;  // nodes[0] is the root

    [[nodiscard]] const Node& root() const { return nodes.front(); }
};

// Occupied node counts in the style of the run reports: one count per
// level 0..max_level, their sum, and the leaf count at max_level.
struct LevelStats {
    std::vector<std::size_t> occupied_per_level;
    std::size_t total_nodes = 0;
    std::size_t occupied_leaves = 0;
};

// One occupied max-level cuboid with a view of its point indices.
struct LeafCell {
    CuboidAddress address;
    std::span<const std::uint32_t> points;
};

// Outcome of coordinate normalization. fallback is set when any axis could
// not use the digit-dropping map and was shifted by its minimum instead.
struct NormalizeResult {
    PointCloud cloud;
    bool fallback = false;
};

// Exact per-axis min/max over all points. Throws IntegrityError on an
// empty cloud.
BoundingBox compute_bbox(const PointCloud& cloud);

// Rescales y and x so that differences beyond the third decimal place
// become unit-scale values: v' = (v - floor(v*10^3)/10^3) * 10^4. z is kept
// unchanged. When the dropped prefix is not the same for every point of an
// axis (the cloud is wider than one 10^-3 step or straddles one), that axis
// falls back to v' = (v - v_min) * 10^4, which preserves cell indices, and
// the result is flagged.
NormalizeResult normalize(const PointCloud& cloud);

// Direct arithmetic address of the level-`level` cuboid containing p.
// Cells are half-open [lo, hi) with the box maximum clamped into the last
// cell; a zero-extent axis yields index 0. Throws IntegrityError when p is
// outside the closed box.
CuboidAddress cell_address(const GeoPoint& p, const BoundingBox& bbox, int level);

// Builds the occupancy octree to depth `level` over compute_bbox(cloud).
// Throws ConfigError when level is outside [0, kMaxLevel], IntegrityError
// on an empty cloud.
OccupancyOctree build_octree(const PointCloud& cloud, int level);

// Same, over an explicit root box; every point must lie inside it. Used to
// re-grid derived clouds (e.g. merged points) on the original box.
OccupancyOctree build_octree(const PointCloud& cloud, const BoundingBox& bbox, int level);

// All occupied max-level cuboids, sorted by (i, j, k). Every point index
// appears in exactly one returned cell.
std::vector<LeafCell> occupied_leaves(const OccupancyOctree& tree);

LevelStats level_stats(const OccupancyOctree& tree);

// Closed extent of an addressed cuboid within the box.
BoundingBox cell_extent(const BoundingBox& bbox, const CuboidAddress& address);

GeoPoint cell_center(const BoundingBox& bbox, const CuboidAddress& address);

// Guard against 8^level node blowup.
inline constexpr int kMaxLevel = 10;

}  // namespace octocloud
