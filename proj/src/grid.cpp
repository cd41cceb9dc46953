#include "octocloud/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "octocloud/errors.hpp"

namespace octocloud {

namespace {

// Index along one axis: half-open cells [lo, hi), box maximum clamped into
// the last cell, zero-extent axis collapsed to index 0.
std::uint32_t axis_index(double v, double lo, double hi, std::uint32_t cells) {
    if (!(hi > lo)) return 0;
    const double s = (hi - lo) / static_cast<double>(cells);
    const double t = std::floor((v - lo) / s);
    if (t <= 0.0) return 0;
    const auto idx = static_cast<std::uint32_t>(t);
    return idx >= cells ? cells - 1 : idx;
}

double truncation_prefix(double v) { return std::floor(v * 1.0e3) / 1.0e3; }

void check_level(int level) {
    if (level < 0 || level > kMaxLevel)
        throw ConfigError("level " + std::to_string(level) + " outside [0, " +
                          std::to_string(kMaxLevel) + "]");
}

}  // namespace

BoundingBox compute_bbox(const PointCloud& cloud) {
    if (cloud.empty()) throw IntegrityError("compute_bbox: empty cloud");
    BoundingBox box{
        std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
        std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
        std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const GeoPoint& p : cloud.points) {
        box.y_min = std::min(box.y_min, p.y);
        box.y_max = std::max(box.y_max, p.y);
        box.x_min = std::min(box.x_min, p.x);
        box.x_max = std::max(box.x_max, p.x);
        box.z_min = std::min(box.z_min, p.z);
        box.z_max = std::max(box.z_max, p.z);
    }
    return box;
}

NormalizeResult normalize(const PointCloud& cloud) {
    if (cloud.empty()) throw IntegrityError("normalize: empty cloud");

    double y_min = cloud.points.front().y, y_max = y_min;
    double x_min = cloud.points.front().x, x_max = x_min;
    for (const GeoPoint& p : cloud.points) {
        y_min = std::min(y_min, p.y);
        y_max = std::max(y_max, p.y);
        x_min = std::min(x_min, p.x);
        x_max = std::max(x_max, p.x);
    }

    // The digit-dropping map is only a single affine shift when every point
    // of the axis shares one 10^-3 prefix. A wider or straddling axis would
    // wrap, so it is shifted by its minimum instead.
    const bool fallback_y = truncation_prefix(y_min) != truncation_prefix(y_max);
    const bool fallback_x = truncation_prefix(x_min) != truncation_prefix(x_max);

    NormalizeResult result;
    result.fallback = fallback_y || fallback_x;
    result.cloud.axis_order = cloud.axis_order;
    result.cloud.points.reserve(cloud.size());
    for (const GeoPoint& p : cloud.points) {
        GeoPoint q = p;
        q.y = (fallback_y ? p.y - y_min : p.y - truncation_prefix(p.y)) * 1.0e4;
        q.x = (fallback_x ? p.x - x_min : p.x - truncation_prefix(p.x)) * 1.0e4;
        result.cloud.points.push_back(q);
    }
    return result;
}

CuboidAddress cell_address(const GeoPoint& p, const BoundingBox& bbox, int level) {
    check_level(level);
    if (!bbox.contains(p)) throw IntegrityError("cell_address: point outside bounding box");
    const std::uint32_t cells = 1u << level;
    return CuboidAddress{level, axis_index(p.y, bbox.y_min, bbox.y_max, cells),
                         axis_index(p.x, bbox.x_min, bbox.x_max, cells),
                         axis_index(p.z, bbox.z_min, bbox.z_max, cells)};
}

namespace {

std::int32_t add_node(OccupancyOctree& tree, const CuboidAddress& address) {
    tree.nodes.push_back(OccupancyOctree::Node{address, {-1, -1, -1, -1, -1, -1, -1, -1}, {}});
    return static_cast<std::int32_t>(tree.nodes.size() - 1);
}

// Distributes the node's points over its 8 children by the corresponding
// bit of their max-level address. Stable, so leaf index lists stay in
// ascending order.
void build_children(OccupancyOctree& tree, std::int32_t node_index,
                    std::vector<std::uint32_t>&& indices,
                    const std::vector<CuboidAddress>& leaf_address) {
    const CuboidAddress base = tree.nodes[node_index].address;
    if (base.level == tree.max_level) {
        tree.nodes[node_index].points = std::move(indices);
        return;
    }
    const int shift = tree.max_level - base.level - 1;
    std::array<std::vector<std::uint32_t>, 8> octants;
    for (std::uint32_t point : indices) {
        const CuboidAddress& a = leaf_address[point];
        const unsigned octant = (((a.i >> shift) & 1u) << 2) | (((a.j >> shift) & 1u) << 1) |
                                ((a.k >> shift) & 1u);
        octants[octant].push_back(point);
    }
    indices = {};
    for (unsigned o = 0; o < 8; ++o) {
        if (octants[o].empty()) continue;
        const CuboidAddress child{base.level + 1, base.i * 2 + ((o >> 2) & 1u),
                                  base.j * 2 + ((o >> 1) & 1u), base.k * 2 + (o & 1u)};
        const std::int32_t child_index = add_node(tree, child);
        tree.nodes[node_index].children[o] = child_index;
        build_children(tree, child_index, std::move(octants[o]), leaf_address);
    }
}

}  // namespace

OccupancyOctree build_octree(const PointCloud& cloud, const BoundingBox& bbox, int level) {
    check_level(level);
    if (cloud.empty()) throw IntegrityError("build_octree: empty cloud");

    std::vector<CuboidAddress> leaf_address;
    leaf_address.reserve(cloud.size());
    for (const GeoPoint& p : cloud.points) leaf_address.push_back(cell_address(p, bbox, level));

    OccupancyOctree tree;
    tree.bbox = bbox;
    tree.max_level = level;

    std::vector<std::uint32_t> all(cloud.size());
    for (std::uint32_t n = 0; n < all.size(); ++n) all[n] = n;

    add_node(tree, CuboidAddress{0, 0, 0, 0});
    build_children(tree, 0, std::move(all), leaf_address);
    return tree;
}

OccupancyOctree build_octree(const PointCloud& cloud, int level) {
    return build_octree(cloud, compute_bbox(cloud), level);
}

std::vector<LeafCell> occupied_leaves(const OccupancyOctree& tree) {
    std::vector<LeafCell> leaves;
    for (const OccupancyOctree::Node& node : tree.nodes) {
        if (node.address.level != tree.max_level) continue;
        leaves.push_back(LeafCell{node.address, std::span(node.points)});
    }
    std::sort(leaves.begin(), leaves.end(),
              [](const LeafCell& a, const LeafCell& b) { return a.address < b.address; });
    return leaves;
}

LevelStats level_stats(const OccupancyOctree& tree) {
    LevelStats stats;
    stats.occupied_per_level.assign(static_cast<std::size_t>(tree.max_level) + 1, 0);
    for (const OccupancyOctree::Node& node : tree.nodes)
        ++stats.occupied_per_level[static_cast<std::size_t>(node.address.level)];
    stats.total_nodes = tree.nodes.size();
    stats.occupied_leaves = stats.occupied_per_level.back();
    return stats;
}

BoundingBox cell_extent(const BoundingBox& bbox, const CuboidAddress& address) {
    const auto cells = static_cast<double>(1u << address.level);
    const double sy = (bbox.y_max - bbox.y_min) / cells;
    const double sx = (bbox.x_max - bbox.x_min) / cells;
    const double sz = (bbox.z_max - bbox.z_min) / cells;
    return BoundingBox{bbox.y_min + address.i * sy, bbox.y_min + (address.i + 1) * sy,
                       bbox.x_min + address.j * sx, bbox.x_min + (address.j + 1) * sx,
                       bbox.z_min + address.k * sz, bbox.z_min + (address.k + 1) * sz};
}

GeoPoint cell_center(const BoundingBox& bbox, const CuboidAddress& address) {
    const BoundingBox ext = cell_extent(bbox, address);
    GeoPoint p;
    p.y = 0.5 * (ext.y_min + ext.y_max);
    p.x = 0.5 * (ext.x_min + ext.x_max);
    p.z = 0.5 * (ext.z_min + ext.z_max);
    return p;
}

}  // namespace octocloud
