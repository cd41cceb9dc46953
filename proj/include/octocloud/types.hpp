#pragma once

#include <optional>
#include <vector>

namespace octocloud {

// RGB color, each channel in [0, 1].
struct Color {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;

    friend bool operator==(const Color&, const Color&) = default;
};

// One georeferenced vertex. Geographic data lists the y (northing) value
// first, then x (easting), then z (elevation); we keep that convention in
// the field order.
struct GeoPoint {
    double y = 0.0;
    double x = 0.0;
    double z = 0.0;
    std::optional<Color> color;
};

// How coordinates are ordered on disk: geographic (y x z) or plain (x y z).
enum class AxisOrder {
    GeoYxz,
    Xyz,
};

struct PointCloud {
    std::vector<GeoPoint> points;
    AxisOrder axis_order = AxisOrder::GeoYxz;

    [[nodiscard]] std::size_t size() const { return points.size(); }
    [[nodiscard]] bool empty() const { return points.empty(); }
};

}  // namespace octocloud
