#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "octocloud/classifier.hpp"
#include "octocloud/types.hpp"

namespace octocloud {

// Colors used when exporting classified cells.
struct ClassColorMap {
    Color surface{0.0, 1.0, 0.0};
    Color above{1.0, 0.0, 0.0};
    Color gap{0.0, 0.0, 1.0};

    [[nodiscard]] const Color& for_class(CellClass cls) const;
};

// Parses Wavefront OBJ vertex data. Every `v` line becomes one point,
// coordinates assigned per axis_order; lines with 6 numbers carry an RGB
// color in [0, 1]. All other record types (f, vn, vt, comments, ...) are
// skipped. Throws ParseError naming the 1-based line number on a malformed
// vertex line, or when the stream holds no vertices at all.
PointCloud parse_obj(std::istream& in, AxisOrder axis_order);
PointCloud parse_obj_file(const std::filesystem::path& path, AxisOrder axis_order);

// Writes vertex-only OBJ, coordinates with 6 decimal places, in the given
// axis order. Colored points become 6-number `v` lines. Throws
// IntegrityError on an empty cloud, IoError on filesystem failure.
void write_obj(const PointCloud& cloud, std::ostream& out, AxisOrder axis_order);
void write_obj_file(const PointCloud& cloud, const std::filesystem::path& path,
                    AxisOrder axis_order);

// Writes ASCII PLY with float x/y/z and uchar red/green/blue. PLY x is
// easting, y northing, z elevation. The schema always carries color;
// points without one are written white.
void write_ply(const PointCloud& cloud, std::ostream& out);
void write_ply_file(const PointCloud& cloud, const std::filesystem::path& path);

// Reads back the ASCII PLY subset written above.
PointCloud parse_ply(std::istream& in);
PointCloud parse_ply_file(const std::filesystem::path& path);

// One center point per classified cell (occupied and gap), colored by
// class, sorted by (i, j, k). Feed the result to write_ply / write_obj.
PointCloud classified_centers(const ClassifiedGrid& grid, const BoundingBox& bbox,
                              const ClassColorMap& colors);

// Cell centers of occupied leaves, colors kept off.
PointCloud leaf_centers(std::span<const LeafCell> leaves, const BoundingBox& bbox);

// Occupied leaves as 8-corner boxes with quad faces, OBJ only.
void write_leaf_boxes_obj(std::span<const LeafCell> leaves, const BoundingBox& bbox,
                          std::ostream& out, AxisOrder axis_order);
void write_leaf_boxes_obj_file(std::span<const LeafCell> leaves, const BoundingBox& bbox,
                               const std::filesystem::path& path, AxisOrder axis_order);

}  // namespace octocloud
