#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "octocloud/grid.hpp"

namespace octocloud {

// One vertical stack of cuboids sharing an (i, j) footprint, with the
// strictly increasing z-indices of its occupied max-level cells.
struct Column {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    std::vector<std::uint32_t> occupied_k;
};

enum class CellClass : std::uint8_t {
    Surface,  // the contiguous occupied run starting at the lowest occupied cell
    Above,    // occupied cells separated from the surface run by empty cells
    Gap,      // empty cells between occupied cells of a column
};

struct ClassifiedCell {
    CuboidAddress address;
    CellClass cls = CellClass::Surface;
    // For Gap cells only: the occupied pair that induced the fill.
    std::uint32_t gap_below_k = 0;
    std::uint32_t gap_above_k = 0;
};

// Classification result over the max-level grid, sorted by (i, j, k).
struct ClassifiedGrid {
    int level = 0;
    std::vector<ClassifiedCell> cells;

    [[nodiscard]] std::size_t count(CellClass cls) const;
    [[nodiscard]] const ClassifiedCell* find(const CuboidAddress& address) const;
};

// Groups occupied leaves into columns keyed by (i, j), sorted
// lexicographically; occupied_k ascending. Throws IntegrityError when the
// addresses mix levels.
std::vector<Column> columnize(std::span<const CuboidAddress> leaves, int level);
std::vector<Column> columnize(std::span<const LeafCell> leaves, int level);

// First pass: walks each column bottom-up in consecutive pairs and marks
// the contiguous run starting at the lowest occupied cell as Surface,
// stopping at the first pair with an empty cell between its members. A
// column with a single occupied cell is Surface. Returns Surface marks
// only.
ClassifiedGrid classify_surface(std::span<const Column> columns, int level);

// Second pass: marks every occupied cell past the first break as Above,
// the rest as Surface, and fills the empty cells between non-adjacent
// occupied pairs as Gap (both surface-above and above-above fills).
ClassifiedGrid classify_full(std::span<const Column> columns, int level);

// True iff both grids mark exactly the same Surface cells.
bool agreement_check(const ClassifiedGrid& surface_only, const ClassifiedGrid& full);

}  // namespace octocloud
