#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "jatam/grid.hpp"

namespace jatam {

using ShapeHash = std::uint32_t;

// Jenkins one-at-a-time hash, streamed a byte at a time.
class OatHasher {
public:
    void add(std::uint8_t byte) {
        h_ += byte;
        h_ += h_ << 10;
        h_ ^= h_ >> 6;
    }
    std::uint32_t finish() const {
        std::uint32_t h = h_;
        h += h << 3;
        h ^= h >> 11;
        h += h << 15;
        return h;
    }

private:
    std::uint32_t h_ = 0;
};

std::uint32_t oat_hash(std::span<const std::uint8_t> bytes);

// Tight bounding box of an assembled structure. Row-major occupancy, y grows
// southward.
struct CroppedShape {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> cells;  // width*height, 1 = occupied
    int origin_x = 0;                 // offset of the box in the source grid
    int origin_y = 0;

    bool occupied(int x, int y) const { return cells[static_cast<std::size_t>(y * width + x)] != 0; }
    int cell_count() const;

    // Occupancy equality; the origin is ignored.
    bool same_shape(const CroppedShape& other) const {
        return width == other.width && height == other.height && cells == other.cells;
    }
};

// Re-crops an arbitrary occupancy bitmap. Throws std::invalid_argument when empty.
CroppedShape crop_bitmap(int width, int height, std::span<const std::uint8_t> occupancy);

// Quarter turn clockwise.
CroppedShape rotate_cw(const CroppedShape& s);

// Bytes: width, height, then (x, y) of each occupied cell in row-major order.
ShapeHash shape_hash(const CroppedShape& s);

// Hash of the four rotation hashes sorted ascending, each fed little-endian.
ShapeHash rotation_invariant_hash(const CroppedShape& s);

// 1 - prod_{i=0}^{n} (1 - i * 2^-32)
double collision_probability(std::uint64_t n);

// Tight box of the occupied cells. Throws std::invalid_argument on an empty grid.
CroppedShape crop(const AssemblyGrid& g);

// Number of positions whose empty/occupied status differs.
int shapediff(const AssemblyGrid& a, const AssemblyGrid& b);
// 1 - shapediff / d^2
double shapesim(const AssemblyGrid& a, const AssemblyGrid& b);

std::string render_ascii(const CroppedShape& s);
CroppedShape parse_ascii(const std::string& text);

}  // namespace jatam
