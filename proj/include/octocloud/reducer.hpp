#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "octocloud/grid.hpp"

namespace octocloud {

// Representative of all points merged inside one occupied max-level
// cuboid: their centroid, mean color over the members that carry one, and
// the member count.
struct MergedPoint {
    GeoPoint point;
    std::size_t multiplicity = 0;
    CuboidAddress cell;
};

// Merges the points of every occupied leaf into one MergedPoint, sorted by
// cell address. Member positions are accumulated in ascending index order
// so the result does not depend on traversal order. Throws IntegrityError
// when the tree references point indices outside the cloud.
std::vector<MergedPoint> reduce(const PointCloud& cloud, const OccupancyOctree& tree);

// |merged| / |cloud|, in (0, 1]. Throws IntegrityError on an empty cloud.
double reduction_ratio(const PointCloud& cloud, std::span<const MergedPoint> merged);

// Merged points as a plain cloud, for export or re-gridding.
PointCloud merged_cloud(std::span<const MergedPoint> merged, AxisOrder axis_order);

}  // namespace octocloud
