#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace jatam {

enum Direction : std::uint8_t { kNorth = 0, kEast = 1, kSouth = 2, kWest = 3 };

inline constexpr Direction opposite(unsigned dir) { return static_cast<Direction>((dir + 2) & 3u); }

// A tile type placed with `orientation` quarter turns clockwise.
struct Placement {
    std::uint8_t tile = 0;
    std::uint8_t orientation = 0;
    friend bool operator==(const Placement&, const Placement&) = default;
};

// d x d board. x indexes columns (west to east), y rows (north to south).
class AssemblyGrid {
public:
    AssemblyGrid() = default;
    explicit AssemblyGrid(int dim) : dim_(dim), cells_(static_cast<std::size_t>(dim) * dim, 0) {
        if (dim < 1)
            throw std::invalid_argument("grid dimension must be positive");
    }

    int dim() const { return dim_; }
    int center() const { return (dim_ - 1) / 2; }

    bool occupied(int x, int y) const { return cells_[index(x, y)] != 0; }
    Placement at(int x, int y) const {
        const auto c = cells_[index(x, y)];
        return {static_cast<std::uint8_t>((c - 1) >> 2), static_cast<std::uint8_t>((c - 1) & 3)};
    }
    void place(int x, int y, Placement p) {
        cells_[index(x, y)] = static_cast<std::uint8_t>(1 + p.tile * 4 + p.orientation);
    }
    void clear(int x, int y) { cells_[index(x, y)] = 0; }

    int occupied_count() const;
    bool empty() const { return occupied_count() == 0; }

    // Raw cell codes: 0 = empty, otherwise 1 + tile*4 + orientation.
    const std::vector<std::uint8_t>& codes() const { return cells_; }
    std::vector<std::uint8_t>& codes() { return cells_; }

    friend bool operator==(const AssemblyGrid&, const AssemblyGrid&) = default;

private:
    std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * dim_ + x; }

    int dim_ = 0;
    std::vector<std::uint8_t> cells_;
};

inline int AssemblyGrid::occupied_count() const {
    int n = 0;
    for (auto c : cells_)
        n += c != 0;
    return n;
}

}  // namespace jatam
