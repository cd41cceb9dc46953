#include "octocloud/classifier.hpp"

#include <algorithm>
#include <cassert>

#include "octocloud/errors.hpp"

namespace octocloud {

std::size_t ClassifiedGrid::count(CellClass cls) const {
    return static_cast<std::size_t>(
        std::count_if(cells.begin(), cells.end(),
                      [cls](const ClassifiedCell& c) { return c.cls == cls; }));
}

const ClassifiedCell* ClassifiedGrid::find(const CuboidAddress& address) const {
    const auto it = std::lower_bound(
        cells.begin(), cells.end(), address,
        [](const ClassifiedCell& c, const CuboidAddress& a) { return c.address < a; });
    if (it == cells.end() || !(it->address == address)) return nullptr;
    return &*it;
}

std::vector<Column> columnize(std::span<const CuboidAddress> leaves, int level) {
    std::vector<CuboidAddress> sorted(leaves.begin(), leaves.end());
    for (const CuboidAddress& a : sorted)
        if (a.level != level) throw IntegrityError("columnize: mixed cuboid levels");
    std::sort(sorted.begin(), sorted.end());

    std::vector<Column> columns;
    for (const CuboidAddress& a : sorted) {
        if (columns.empty() || columns.back().i != a.i || columns.back().j != a.j) {
            columns.push_back(Column{a.i, a.j, {}});
        } else if (columns.back().occupied_k.back() == a.k) {
            throw IntegrityError("columnize: duplicate cuboid address");
        }
        columns.back().occupied_k.push_back(a.k);
    }
    return columns;
}

std::vector<Column> columnize(std::span<const LeafCell> leaves, int level) {
    std::vector<CuboidAddress> addresses;
    addresses.reserve(leaves.size());
    for (const LeafCell& leaf : leaves) addresses.push_back(leaf.address);
    return columnize(addresses, level);
}

namespace {

// Length of the contiguous occupied run that starts at the lowest occupied
// cell. A single-cell column counts as a run of one: it is surface.
std::size_t surface_run_end(const std::vector<std::uint32_t>& ks) {
    std::size_t run_end = 0;
    while (run_end + 1 < ks.size() && ks[run_end + 1] == ks[run_end] + 1) ++run_end;
    return run_end;
}

void sort_by_address(ClassifiedGrid& grid) {
    std::sort(grid.cells.begin(), grid.cells.end(),
              [](const ClassifiedCell& a, const ClassifiedCell& b) {
                  return a.address < b.address;
              });
}

}  // namespace

ClassifiedGrid classify_surface(std::span<const Column> columns, int level) {
    ClassifiedGrid grid;
    grid.level = level;
    for (const Column& col : columns) {
        const std::size_t run_end = surface_run_end(col.occupied_k);
        for (std::size_t t = 0; t <= run_end; ++t) {
            grid.cells.push_back(ClassifiedCell{
                CuboidAddress{level, col.i, col.j, col.occupied_k[t]}, CellClass::Surface});
        }
    }
    sort_by_address(grid);
    return grid;
}

ClassifiedGrid classify_full(std::span<const Column> columns, int level) {
    ClassifiedGrid grid;
    grid.level = level;
    for (const Column& col : columns) {
        const std::vector<std::uint32_t>& ks = col.occupied_k;
        const std::size_t run_end = surface_run_end(ks);
        for (std::size_t t = 0; t <= run_end; ++t) {
            grid.cells.push_back(
                ClassifiedCell{CuboidAddress{level, col.i, col.j, ks[t]}, CellClass::Surface});
        }
        // Everything past the first break is above; empty cells between
        // non-adjacent pairs are filled as gaps, keyed to the pair.
        for (std::size_t t = run_end; t + 1 < ks.size(); ++t) {
            assert(t > run_end || ks[t + 1] > ks[t] + 1);
            for (std::uint32_t k = ks[t] + 1; k < ks[t + 1]; ++k) {
                grid.cells.push_back(ClassifiedCell{CuboidAddress{level, col.i, col.j, k},
                                                    CellClass::Gap, ks[t], ks[t + 1]});
            }
            grid.cells.push_back(
                ClassifiedCell{CuboidAddress{level, col.i, col.j, ks[t + 1]}, CellClass::Above});
        }
    }
    sort_by_address(grid);
    return grid;
}

namespace {

std::vector<CuboidAddress> surface_addresses(const ClassifiedGrid& grid) {
    std::vector<CuboidAddress> addresses;
    for (const ClassifiedCell& cell : grid.cells)
        if (cell.cls == CellClass::Surface) addresses.push_back(cell.address);
    return addresses;
}

}  // namespace

bool agreement_check(const ClassifiedGrid& surface_only, const ClassifiedGrid& full) {
    return surface_addresses(surface_only) == surface_addresses(full);
}

}  // namespace octocloud
