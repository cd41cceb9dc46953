#include "octocloud/point_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "octocloud/errors.hpp"

namespace octocloud {

const Color& ClassColorMap::for_class(CellClass cls) const {
    switch (cls) {
        case CellClass::Surface: return surface;
        case CellClass::Above: return above;
        case CellClass::Gap: return gap;
    }
    return surface;  // unreachable
}

namespace {

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

bool is_space(char c) { return c == ' ' || c == '\t'; }

// Splits the line into whitespace-separated fields and parses each as a
// double. Returns the field count, or -1 when a field is not numeric.
int parse_fields(std::string_view line, std::size_t offset, std::span<double> out) {
    const char* p = line.data() + offset;
    const char* end = line.data() + line.size();
    int count = 0;
    while (true) {
        while (p < end && is_space(*p)) ++p;
        if (p == end) return count;
        if (count == static_cast<int>(out.size())) return count + 1;  // too many
        if (*p == '+') ++p;  // from_chars takes no explicit plus sign
        const auto [next, ec] = std::from_chars(p, end, out[static_cast<std::size_t>(count)]);
        if (ec != std::errc{} || next == p || (next < end && !is_space(*next))) return -1;
        p = next;
        ++count;
    }
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
    throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

GeoPoint point_from_triple(double a, double b, double c, AxisOrder order) {
    GeoPoint p;
    if (order == AxisOrder::GeoYxz) {
        p.y = a;
        p.x = b;
    } else {
        p.x = a;
        p.y = b;
    }
    p.z = c;
    return p;
}

void append_coord(std::string& out, double v) {
    std::array<char, 64> buf{};
    const int len = std::snprintf(buf.data(), buf.size(), "%.6f", v);
    out.append(buf.data(), static_cast<std::size_t>(len));
}

int channel_byte(double c) { return static_cast<int>(std::lround(c * 255.0)); }

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    return out;
}

void flush_checked(std::ostream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

PointCloud parse_obj(std::istream& in, AxisOrder axis_order) {
    PointCloud cloud;
    cloud.axis_order = axis_order;

    std::string raw;
    std::size_t line_no = 0;
    std::array<double, 7> fields{};
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = strip_cr(raw);

        // Vertex records only; faces, normals, texture coords and comments
        // are passed over.
        if (line.size() < 2 || line[0] != 'v' || !is_space(line[1])) continue;

        const int count = parse_fields(line, 1, fields);
        if (count < 0) parse_fail(line_no, "non-numeric field in vertex line");
        if (count < 3) parse_fail(line_no, "vertex line has fewer than 3 coordinates");
        if (count != 3 && count != 6)
            parse_fail(line_no, "vertex line must have 3 coordinates or 3 coordinates plus RGB");
        for (int f = 0; f < count; ++f)
            if (!std::isfinite(fields[static_cast<std::size_t>(f)]))
                parse_fail(line_no, "non-finite coordinate");

        GeoPoint p = point_from_triple(fields[0], fields[1], fields[2], axis_order);
        if (count == 6) {
            for (int f = 3; f < 6; ++f) {
                const double c = fields[static_cast<std::size_t>(f)];
                if (c < 0.0 || c > 1.0) parse_fail(line_no, "color channel outside [0, 1]");
            }
            p.color = Color{fields[3], fields[4], fields[5]};
        }
        cloud.points.push_back(p);
    }
    if (cloud.empty()) throw ParseError("no vertex lines in input");
    return cloud;
}

PointCloud parse_obj_file(const std::filesystem::path& path, AxisOrder axis_order) {
    std::ifstream in = open_input(path);
    return parse_obj(in, axis_order);
}

void write_obj(const PointCloud& cloud, std::ostream& out, AxisOrder axis_order) {
    if (cloud.empty()) throw IntegrityError("write_obj: empty cloud");
    std::string buf;
    buf.reserve(1 << 16);
    for (const GeoPoint& p : cloud.points) {
        buf += "v ";
        append_coord(buf, axis_order == AxisOrder::GeoYxz ? p.y : p.x);
        buf += ' ';
        append_coord(buf, axis_order == AxisOrder::GeoYxz ? p.x : p.y);
        buf += ' ';
        append_coord(buf, p.z);
        if (p.color) {
            buf += ' ';
            append_coord(buf, p.color->r);
            buf += ' ';
            append_coord(buf, p.color->g);
            buf += ' ';
            append_coord(buf, p.color->b);
        }
        buf += '\n';
        if (buf.size() > (1 << 20)) {
            out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
            buf.clear();
        }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_obj_file(const PointCloud& cloud, const std::filesystem::path& path,
                    AxisOrder axis_order) {
    std::ofstream out = open_output(path);
    write_obj(cloud, out, axis_order);
    flush_checked(out, path);
}

void write_ply(const PointCloud& cloud, std::ostream& out) {
    if (cloud.empty()) throw IntegrityError("write_ply: empty cloud");
    std::string buf;
    buf.reserve(1 << 16);
    buf += "ply\nformat ascii 1.0\nelement vertex " + std::to_string(cloud.size()) +
           "\nproperty float x\nproperty float y\nproperty float z\n"
           "property uchar red\nproperty uchar green\nproperty uchar blue\nend_header\n";
    for (const GeoPoint& p : cloud.points) {
        append_coord(buf, p.x);
        buf += ' ';
        append_coord(buf, p.y);
        buf += ' ';
        append_coord(buf, p.z);
        const Color c = p.color.value_or(Color{1.0, 1.0, 1.0});
        buf += ' ' + std::to_string(channel_byte(c.r)) + ' ' + std::to_string(channel_byte(c.g)) +
               ' ' + std::to_string(channel_byte(c.b)) + '\n';
        if (buf.size() > (1 << 20)) {
            out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
            buf.clear();
        }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_ply_file(const PointCloud& cloud, const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    write_ply(cloud, out);
    flush_checked(out, path);
}

PointCloud parse_ply(std::istream& in) {
    std::string raw;
    std::size_t line_no = 0;

    auto next_line = [&](std::string_view expect_what) -> std::string {
        while (std::getline(in, raw)) {
            ++line_no;
            const std::string_view line = strip_cr(raw);
            if (line.rfind("comment", 0) == 0) continue;
            return std::string(line);
        }
        throw ParseError("unexpected end of PLY header, expected " + std::string(expect_what));
    };

    if (next_line("ply magic") != "ply") throw ParseError("not a PLY file");
    if (next_line("format line") != "format ascii 1.0")
        throw ParseError("unsupported PLY format, expected 'format ascii 1.0'");

    std::size_t vertex_count = 0;
    {
        const std::string line = next_line("element vertex");
        std::istringstream fields(line);
        std::string element, vertex;
        fields >> element >> vertex >> vertex_count;
        if (element != "element" || vertex != "vertex" || !fields)
            throw ParseError("expected 'element vertex <count>'");
    }

    // Property order defines the column layout of each data row.
    std::vector<std::string> columns;
    while (true) {
        const std::string line = next_line("property or end_header");
        if (line == "end_header") break;
        std::istringstream fields(line);
        std::string keyword, type, name;
        fields >> keyword >> type >> name;
        if (keyword == "element") throw ParseError("unsupported PLY element after vertex");
        if (keyword != "property" || !fields) parse_fail(line_no, "malformed PLY header line");
        columns.push_back(name);
    }

    auto column_of = [&](std::string_view name) -> std::size_t {
        for (std::size_t c = 0; c < columns.size(); ++c)
            if (columns[c] == name) return c;
        throw ParseError("PLY header lacks property '" + std::string(name) + "'");
    };
    const std::size_t cx = column_of("x"), cy = column_of("y"), cz = column_of("z");
    const std::size_t cr = column_of("red"), cg = column_of("green"), cb = column_of("blue");

    PointCloud cloud;
    cloud.points.reserve(vertex_count);
    std::vector<double> fields(columns.size());
    for (std::size_t row = 0; row < vertex_count; ++row) {
        if (!std::getline(in, raw)) throw ParseError("PLY data ended early");
        ++line_no;
        const std::string_view line = strip_cr(raw);
        const int count = parse_fields(line, 0, fields);
        if (count != static_cast<int>(columns.size()))
            parse_fail(line_no, "PLY row does not match property count");
        GeoPoint p;
        p.x = fields[cx];
        p.y = fields[cy];
        p.z = fields[cz];
        p.color = Color{fields[cr] / 255.0, fields[cg] / 255.0, fields[cb] / 255.0};
        cloud.points.push_back(p);
    }
    if (cloud.empty()) throw ParseError("PLY file has no vertices");
    return cloud;
}

PointCloud parse_ply_file(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    return parse_ply(in);
}

PointCloud classified_centers(const ClassifiedGrid& grid, const BoundingBox& bbox,
                              const ClassColorMap& colors) {
    PointCloud cloud;
    cloud.points.reserve(grid.cells.size());
    for (const ClassifiedCell& cell : grid.cells) {
        GeoPoint p = cell_center(bbox, cell.address);
        p.color = colors.for_class(cell.cls);
        cloud.points.push_back(p);
    }
    return cloud;
}

PointCloud leaf_centers(std::span<const LeafCell> leaves, const BoundingBox& bbox) {
    PointCloud cloud;
    cloud.points.reserve(leaves.size());
    for (const LeafCell& leaf : leaves) cloud.points.push_back(cell_center(bbox, leaf.address));
    return cloud;
}

void write_leaf_boxes_obj(std::span<const LeafCell> leaves, const BoundingBox& bbox,
                          std::ostream& out, AxisOrder axis_order) {
    if (leaves.empty()) throw IntegrityError("write_leaf_boxes_obj: no occupied cells");
    std::string buf;
    buf.reserve(1 << 16);
    for (const LeafCell& leaf : leaves) {
        const BoundingBox e = cell_extent(bbox, leaf.address);
        const std::array<std::array<double, 3>, 8> corners{{
            {e.y_min, e.x_min, e.z_min},
            {e.y_max, e.x_min, e.z_min},
            {e.y_max, e.x_max, e.z_min},
            {e.y_min, e.x_max, e.z_min},
            {e.y_min, e.x_min, e.z_max},
            {e.y_max, e.x_min, e.z_max},
            {e.y_max, e.x_max, e.z_max},
            {e.y_min, e.x_max, e.z_max},
        }};
        for (const auto& [y, x, z] : corners) {
            buf += "v ";
            append_coord(buf, axis_order == AxisOrder::GeoYxz ? y : x);
            buf += ' ';
            append_coord(buf, axis_order == AxisOrder::GeoYxz ? x : y);
            buf += ' ';
            append_coord(buf, z);
            buf += '\n';
        }
    }
    // Quad faces per box: bottom, top, four sides. OBJ indices are 1-based.
    static constexpr std::array<std::array<int, 4>, 6> kFaces{{
        {0, 1, 2, 3},
        {4, 5, 6, 7},
        {0, 1, 5, 4},
        {1, 2, 6, 5},
        {2, 3, 7, 6},
        {3, 0, 4, 7},
    }};
    for (std::size_t cell = 0; cell < leaves.size(); ++cell) {
        const std::size_t base = cell * 8 + 1;
        for (const auto& face : kFaces) {
            buf += 'f';
            for (int corner : face) {
                buf += ' ';
                buf += std::to_string(base + static_cast<std::size_t>(corner));
            }
            buf += '\n';
        }
        if (buf.size() > (1 << 20)) {
            out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
            buf.clear();
        }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_leaf_boxes_obj_file(std::span<const LeafCell> leaves, const BoundingBox& bbox,
                               const std::filesystem::path& path, AxisOrder axis_order) {
    std::ofstream out = open_output(path);
    write_leaf_boxes_obj(leaves, bbox, out, axis_order);
    flush_checked(out, path);
}

}  // namespace octocloud
