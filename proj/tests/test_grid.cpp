#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <tuple>

#include "octocloud/errors.hpp"
#include "octocloud/grid.hpp"

using namespace octocloud;

namespace {

PointCloud cloud_of(std::initializer_list<GeoPoint> points) {
    PointCloud c;
    c.points = points;
    return c;
}

PointCloud random_cloud(std::size_t count, std::mt19937_64& rng, double y0 = 0.0,
                        double x0 = 0.0, double z0 = 0.0, double ext = 1.0) {
    auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    PointCloud c;
    c.points.reserve(count);
    for (std::size_t n = 0; n < count; ++n)
        c.points.push_back(GeoPoint{y0 + unit() * ext, x0 + unit() * ext, z0 + unit() * ext});
    return c;
}

// Eight points at the corners of the unit cube.
PointCloud corner_cloud() {
    PointCloud c;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                c.points.push_back(GeoPoint{double(i), double(j), double(k)});
    return c;
}

using CellKey = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>;

CellKey key_of(const CuboidAddress& a) { return CellKey{a.i, a.j, a.k}; }

// Independent reading of the digit-dropping rule straight off the decimal
// text: digits from the 4th decimal place on, read with the 4th decimal as
// the units digit.
double decimal_string_residue(const std::string& text) {
    const auto dot = text.find('.');
    REQUIRE(dot != std::string::npos);
    const std::string frac = text.substr(dot + 1);
    REQUIRE(frac.size() > 3);
    const std::string kept = frac.substr(3);
    return std::stod(kept.substr(0, 1) + "." + kept.substr(1));
}

}  // namespace

TEST_CASE("compute_bbox degenerate single point") {
    const BoundingBox box = compute_bbox(cloud_of({GeoPoint{1, 2, 3}}));
    CHECK(box.y_min == 1.0);
    CHECK(box.y_max == 1.0);
    CHECK(box.x_min == 2.0);
    CHECK(box.x_max == 2.0);
    CHECK(box.z_min == 3.0);
    CHECK(box.z_max == 3.0);
}

TEST_CASE("compute_bbox two points") {
    const BoundingBox box = compute_bbox(cloud_of({GeoPoint{0, 0, 0}, GeoPoint{1, 2, 3}}));
    CHECK(box.y_min == 0.0);
    CHECK(box.y_max == 1.0);
    CHECK(box.x_min == 0.0);
    CHECK(box.x_max == 2.0);
    CHECK(box.z_min == 0.0);
    CHECK(box.z_max == 3.0);
}

TEST_CASE("compute_bbox matches linear-scan oracle on random cloud") {
    std::mt19937_64 rng(7);
    const PointCloud cloud = random_cloud(1000, rng);
    double ymin = cloud.points[0].y, ymax = ymin;
    double xmin = cloud.points[0].x, xmax = xmin;
    double zmin = cloud.points[0].z, zmax = zmin;
    for (const GeoPoint& p : cloud.points) {
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        zmin = std::min(zmin, p.z);
        zmax = std::max(zmax, p.z);
    }
    const BoundingBox box = compute_bbox(cloud);
    CHECK(box.y_min == ymin);
    CHECK(box.y_max == ymax);
    CHECK(box.x_min == xmin);
    CHECK(box.x_max == xmax);
    CHECK(box.z_min == zmin);
    CHECK(box.z_max == zmax);
    CHECK(box.y_min >= 0.0);
    CHECK(box.y_max <= 1.0);
}

TEST_CASE("compute_bbox rejects empty cloud") {
    CHECK_THROWS_AS(compute_bbox(PointCloud{}), IntegrityError);
}

TEST_CASE("normalize drops the coarse digits and scales the 4th decimal to units") {
    const PointCloud cloud =
        cloud_of({GeoPoint{41.1234567, 41.1230001, 812.25}, GeoPoint{41.1230001, 41.1234, 5.0}});
    const NormalizeResult result = normalize(cloud);
    CHECK_FALSE(result.fallback);
    CHECK(result.cloud.points[0].y ==
          doctest::Approx(decimal_string_residue("41.1234567")).epsilon(1e-9));
    CHECK(result.cloud.points[0].y == doctest::Approx(4.567).epsilon(1e-9));
    // z stays untouched.
    CHECK(result.cloud.points[0].z == 812.25);
    CHECK(result.cloud.points[1].z == 5.0);
}

TEST_CASE("normalize is pure scaling when coordinates sit below one 10^-3 step") {
    const PointCloud cloud = cloud_of({GeoPoint{0.0001, 0.0002, 1.0}, GeoPoint{0.0005, 0.0009, 2.0}});
    const NormalizeResult result = normalize(cloud);
    CHECK_FALSE(result.fallback);
    CHECK(result.cloud.points[0].y == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(result.cloud.points[1].y == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(result.cloud.points[1].x == doctest::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("normalize falls back on a wide axis") {
    const PointCloud cloud = cloud_of({GeoPoint{10.0, 0.0, 0.0}, GeoPoint{10.01, 0.0, 1.0}});
    const NormalizeResult result = normalize(cloud);
    CHECK(result.fallback);
    CHECK(result.cloud.points[0].y == doctest::Approx(0.0));
    CHECK(result.cloud.points[1].y == doctest::Approx(100.0).epsilon(1e-9));
}

TEST_CASE("normalize falls back when a narrow axis straddles a 10^-3 boundary") {
    // Extent 2e-5, but the dropped prefix would differ between the points,
    // which would wrap their order.
    const PointCloud cloud = cloud_of({GeoPoint{41.12299, 0.0, 0.0}, GeoPoint{41.12301, 0.0, 1.0}});
    const NormalizeResult result = normalize(cloud);
    CHECK(result.fallback);
    CHECK(result.cloud.points[0].y <= result.cloud.points[1].y);
}

TEST_CASE("normalize keeps cell addresses when no fallback triggers") {
    std::mt19937_64 rng(11);
    const PointCloud cloud = random_cloud(500, rng, 41.6930005, 44.8010005, 812.0, 8.0e-4);
    const NormalizeResult result = normalize(cloud);
    REQUIRE_FALSE(result.fallback);
    const BoundingBox before = compute_bbox(cloud);
    const BoundingBox after = compute_bbox(result.cloud);
    for (int level : {1, 3, 5}) {
        for (std::size_t n = 0; n < cloud.size(); ++n) {
            const CuboidAddress a = cell_address(cloud.points[n], before, level);
            const CuboidAddress b = cell_address(result.cloud.points[n], after, level);
            REQUIRE(a == b);
        }
    }
}

TEST_CASE("normalize rejects empty cloud") {
    CHECK_THROWS_AS(normalize(PointCloud{}), IntegrityError);
}

TEST_CASE("cell_address corners and midpoint") {
    const BoundingBox box{0, 1, 0, 1, 0, 1};
    CHECK(cell_address(GeoPoint{0, 0, 0}, box, 3) == CuboidAddress{3, 0, 0, 0});
    // Box maximum clamps into the last cell.
    CHECK(cell_address(GeoPoint{1, 1, 1}, box, 3) == CuboidAddress{3, 7, 7, 7});
    // Exact midpoints land in the upper half-open cell.
    CHECK(cell_address(GeoPoint{0.5, 0.5, 0.5}, box, 1) == CuboidAddress{1, 1, 1, 1});
}

TEST_CASE("cell_address midpoint agrees with octree descent") {
    PointCloud cloud = cloud_of(
        {GeoPoint{0, 0, 0}, GeoPoint{1, 1, 1}, GeoPoint{0.5, 0.5, 0.5}});
    const OccupancyOctree tree = build_octree(cloud, 1);
    const CuboidAddress direct = cell_address(cloud.points[2], tree.bbox, 1);
    CHECK(direct == CuboidAddress{1, 1, 1, 1});
    bool found = false;
    for (const LeafCell& leaf : occupied_leaves(tree)) {
        if (std::find(leaf.points.begin(), leaf.points.end(), 2u) != leaf.points.end()) {
            CHECK(leaf.address == direct);
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("cell_address degenerate axis maps to index 0") {
    const BoundingBox box{0, 1, 2, 2, 0, 1};  // x has zero extent
    CHECK(cell_address(GeoPoint{0.25, 2, 0.75}, box, 2) == CuboidAddress{2, 1, 0, 3});
}

TEST_CASE("cell_address rejects points outside the box") {
    const BoundingBox box{0, 1, 0, 1, 0, 1};
    CHECK_THROWS_AS(cell_address(GeoPoint{2, 0, 0}, box, 1), IntegrityError);
}

TEST_CASE("build_octree eight corner points at level 1") {
    const OccupancyOctree tree = build_octree(corner_cloud(), 1);
    const std::vector<LeafCell> leaves = occupied_leaves(tree);
    REQUIRE(leaves.size() == 8);
    for (const LeafCell& leaf : leaves) CHECK(leaf.points.size() == 1);
    const LevelStats stats = level_stats(tree);
    CHECK(stats.occupied_per_level == std::vector<std::size_t>{1, 8});
    CHECK(stats.total_nodes == 9);
}

TEST_CASE("build_octree single point forms a chain") {
    for (int level : {0, 1, 3, 5}) {
        const OccupancyOctree tree = build_octree(cloud_of({GeoPoint{5, 6, 7}}), level);
        const LevelStats stats = level_stats(tree);
        CHECK(stats.total_nodes == static_cast<std::size_t>(level) + 1);
        for (std::size_t count : stats.occupied_per_level) CHECK(count == 1);
        CHECK(stats.occupied_leaves == 1);
    }
}

TEST_CASE("build_octree occupied leaves match the direct-addressing oracle") {
    std::mt19937_64 rng(23);
    const PointCloud cloud = random_cloud(5000, rng);
    const int level = 4;
    const OccupancyOctree tree = build_octree(cloud, level);

    std::set<CellKey> from_tree;
    for (const LeafCell& leaf : occupied_leaves(tree)) from_tree.insert(key_of(leaf.address));

    std::set<CellKey> from_arithmetic;
    for (const GeoPoint& p : cloud.points)
        from_arithmetic.insert(key_of(cell_address(p, tree.bbox, level)));

    CHECK(from_tree == from_arithmetic);
}

TEST_CASE("build_octree validates level and cloud") {
    CHECK_THROWS_AS(build_octree(corner_cloud(), -1), ConfigError);
    CHECK_THROWS_AS(build_octree(corner_cloud(), 11), ConfigError);
    CHECK_THROWS_AS(build_octree(PointCloud{}, 3), IntegrityError);
}

TEST_CASE("occupied_leaves partitions the point indices") {
    std::mt19937_64 rng(31);
    const PointCloud cloud = random_cloud(3000, rng);
    const OccupancyOctree tree = build_octree(cloud, 3);
    std::set<std::uint32_t> seen;
    for (const LeafCell& leaf : occupied_leaves(tree)) {
        CHECK(leaf.address.level == 3);
        for (std::uint32_t index : leaf.points) {
            CHECK(seen.insert(index).second);  // pairwise disjoint
        }
    }
    CHECK(seen.size() == cloud.size());
}

TEST_CASE("level_stats single point at level 5") {
    const OccupancyOctree tree = build_octree(cloud_of({GeoPoint{1, 2, 3}}), 5);
    const LevelStats stats = level_stats(tree);
    CHECK(stats.occupied_per_level == std::vector<std::size_t>{1, 1, 1, 1, 1, 1});
    CHECK(stats.total_nodes == 6);
    CHECK(stats.occupied_leaves == 1);
}

TEST_CASE("level_stats matches distinct-ancestor counting on a flat slab") {
    // A 4x4x1 block of occupied cells at level 2.
    PointCloud cloud;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            cloud.points.push_back(GeoPoint{(i + 0.5) / 4.0, (j + 0.5) / 4.0, 0.1});
    cloud.points.push_back(GeoPoint{0, 0, 0});
    cloud.points.push_back(GeoPoint{1, 1, 0.2});  // pins the full y/x extent
    const OccupancyOctree tree = build_octree(cloud, 2);

    std::set<CellKey> leaves;
    for (const GeoPoint& p : cloud.points) leaves.insert(key_of(cell_address(p, tree.bbox, 2)));

    std::vector<std::size_t> expected;
    for (int level = 0; level <= 2; ++level) {
        std::set<CellKey> ancestors;
        for (const auto& [i, j, k] : leaves)
            ancestors.insert(CellKey{i >> (2 - level), j >> (2 - level), k >> (2 - level)});
        expected.push_back(ancestors.size());
    }

    const LevelStats stats = level_stats(tree);
    CHECK(stats.occupied_per_level == expected);
    std::size_t sum = 0;
    for (std::size_t count : expected) sum += count;
    CHECK(stats.total_nodes == sum);
}

TEST_CASE("occupancy is monotone and bounded across levels") {
    std::mt19937_64 rng(47);
    const PointCloud cloud = random_cloud(2000, rng);
    for (int level : {1, 2, 3, 4, 5}) {
        const OccupancyOctree tree = build_octree(cloud, level);
        const LevelStats stats = level_stats(tree);
        for (std::size_t l = 0; l + 1 < stats.occupied_per_level.size(); ++l) {
            CHECK(stats.occupied_per_level[l + 1] >= stats.occupied_per_level[l]);
            CHECK(stats.occupied_per_level[l + 1] <= 8 * stats.occupied_per_level[l]);
        }
        CHECK(stats.occupied_leaves <=
              std::min(cloud.size(), static_cast<std::size_t>(1) << (3 * level)));
    }
}

TEST_CASE("cell_extent and cell_center line up with the address arithmetic") {
    const BoundingBox box{0, 8, 0, 4, 0, 2};
    const CuboidAddress addr{2, 3, 1, 0};
    const BoundingBox ext = cell_extent(box, addr);
    CHECK(ext.y_min == doctest::Approx(6.0));
    CHECK(ext.y_max == doctest::Approx(8.0));
    CHECK(ext.x_min == doctest::Approx(1.0));
    CHECK(ext.x_max == doctest::Approx(2.0));
    CHECK(ext.z_min == doctest::Approx(0.0));
    CHECK(ext.z_max == doctest::Approx(0.5));
    const GeoPoint center = cell_center(box, addr);
    CHECK(center.y == doctest::Approx(7.0));
    CHECK(center.x == doctest::Approx(1.5));
    CHECK(center.z == doctest::Approx(0.25));
    CHECK(cell_address(center, box, 2) == addr);
}
