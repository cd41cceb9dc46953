#include "octocloud/reducer.hpp"

#include <algorithm>
#include <cassert>

#include "octocloud/errors.hpp"

namespace octocloud {

std::vector<MergedPoint> reduce(const PointCloud& cloud, const OccupancyOctree& tree) {
    const std::vector<LeafCell> leaves = occupied_leaves(tree);

    std::vector<MergedPoint> merged;
    merged.reserve(leaves.size());
    for (const LeafCell& leaf : leaves) {
        assert(std::is_sorted(leaf.points.begin(), leaf.points.end()));
        double sy = 0.0, sx = 0.0, sz = 0.0;
        double sr = 0.0, sg = 0.0, sb = 0.0;
        std::size_t colored = 0;
        for (std::uint32_t index : leaf.points) {
            if (index >= cloud.size())
                throw IntegrityError("reduce: tree references point index outside cloud");
            const GeoPoint& p = cloud.points[index];
            sy += p.y;
            sx += p.x;
            sz += p.z;
            if (p.color) {
                sr += p.color->r;
                sg += p.color->g;
                sb += p.color->b;
                ++colored;
            }
        }
        const auto m = static_cast<double>(leaf.points.size());
        MergedPoint out;
        out.point.y = sy / m;
        out.point.x = sx / m;
        out.point.z = sz / m;
        if (colored > 0) {
            const auto cm = static_cast<double>(colored);
            out.point.color = Color{sr / cm, sg / cm, sb / cm};
        }
        out.multiplicity = leaf.points.size();
        out.cell = leaf.address;
        merged.push_back(out);
    }
    return merged;
}

double reduction_ratio(const PointCloud& cloud, std::span<const MergedPoint> merged) {
    if (cloud.empty()) throw IntegrityError("reduction_ratio: empty cloud");
    return static_cast<double>(merged.size()) / static_cast<double>(cloud.size());
}

PointCloud merged_cloud(std::span<const MergedPoint> merged, AxisOrder axis_order) {
    PointCloud cloud;
    cloud.axis_order = axis_order;
    cloud.points.reserve(merged.size());
    for (const MergedPoint& m : merged) cloud.points.push_back(m.point);
    return cloud;
}

}  // namespace octocloud
