#include "jatam/shape.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace jatam {

std::uint32_t oat_hash(std::span<const std::uint8_t> bytes) {
    OatHasher h;
    for (auto b : bytes)
        h.add(b);
    return h.finish();
}

int CroppedShape::cell_count() const {
    int n = 0;
    for (auto c : cells)
        n += c != 0;
    return n;
}

CroppedShape crop_bitmap(int width, int height, std::span<const std::uint8_t> occupancy) {
    if (width <= 0 || height <= 0 || occupancy.size() != static_cast<std::size_t>(width) * height)
        throw std::invalid_argument("crop_bitmap: bad dimensions");
    int x0 = width, y0 = height, x1 = -1, y1 = -1;
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            if (occupancy[static_cast<std::size_t>(y * width + x)]) {
                x0 = std::min(x0, x);
                x1 = std::max(x1, x);
                y0 = std::min(y0, y);
                y1 = std::max(y1, y);
            }
    if (x1 < 0)
        throw std::invalid_argument("crop: nothing to crop");
    CroppedShape s;
    s.width = x1 - x0 + 1;
    s.height = y1 - y0 + 1;
    s.origin_x = x0;
    s.origin_y = y0;
    s.cells.assign(static_cast<std::size_t>(s.width) * s.height, 0);
    for (int y = 0; y < s.height; ++y)
        for (int x = 0; x < s.width; ++x)
            s.cells[static_cast<std::size_t>(y * s.width + x)] =
                occupancy[static_cast<std::size_t>((y + y0) * width + x + x0)] ? 1 : 0;
    return s;
}

CroppedShape crop(const AssemblyGrid& g) {
    return crop_bitmap(g.dim(), g.dim(), g.codes());
}

CroppedShape rotate_cw(const CroppedShape& s) {
    CroppedShape r;
    r.width = s.height;
    r.height = s.width;
    r.cells.assign(s.cells.size(), 0);
    // (x, y) -> (h-1-y, x)
    for (int y = 0; y < s.height; ++y)
        for (int x = 0; x < s.width; ++x)
            r.cells[static_cast<std::size_t>(x * r.width + (s.height - 1 - y))] =
                s.cells[static_cast<std::size_t>(y * s.width + x)];
    return r;
}

ShapeHash shape_hash(const CroppedShape& s) {
    if (s.width > 255 || s.height > 255)
        throw std::invalid_argument("shape_hash: shape wider than 255 cells");
    OatHasher h;
    h.add(static_cast<std::uint8_t>(s.width));
    h.add(static_cast<std::uint8_t>(s.height));
    for (int y = 0; y < s.height; ++y)
        for (int x = 0; x < s.width; ++x)
            if (s.occupied(x, y)) {
                h.add(static_cast<std::uint8_t>(x));
                h.add(static_cast<std::uint8_t>(y));
            }
    return h.finish();
}

ShapeHash rotation_invariant_hash(const CroppedShape& s) {
    std::array<ShapeHash, 4> hashes{};
    CroppedShape r = s;
    for (auto& h : hashes) {
        h = shape_hash(r);
        r = rotate_cw(r);
    }
    std::sort(hashes.begin(), hashes.end());
    OatHasher h;
    for (auto v : hashes)
        for (int k = 0; k < 4; ++k)
            h.add(static_cast<std::uint8_t>(v >> (8 * k)));
    return h.finish();
}

double collision_probability(std::uint64_t n) {
    // Accumulate log(1 - i/2^32) to keep precision for tiny products.
    double log_no_collision = 0.0;
    for (std::uint64_t i = 0; i <= n; ++i)
        log_no_collision += std::log1p(-static_cast<double>(i) * 0x1.0p-32);
    return -std::expm1(log_no_collision);
}

int shapediff(const AssemblyGrid& a, const AssemblyGrid& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("shapediff: grid dimensions differ");
    int n = 0;
    for (std::size_t i = 0; i < a.codes().size(); ++i)
        n += (a.codes()[i] != 0) != (b.codes()[i] != 0);
    return n;
}

double shapesim(const AssemblyGrid& a, const AssemblyGrid& b) {
    const double d = a.dim();
    return 1.0 - shapediff(a, b) / (d * d);
}

std::string render_ascii(const CroppedShape& s) {
    std::string out;
    out.reserve(static_cast<std::size_t>((s.width + 1) * s.height));
    for (int y = 0; y < s.height; ++y) {
        for (int x = 0; x < s.width; ++x)
            out += s.occupied(x, y) ? '#' : '.';
        out += '\n';
    }
    return out;
}

CroppedShape parse_ascii(const std::string& text) {
    std::vector<std::string> rows;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        for (char c : line)
            if (c != '#' && c != '.')
                throw std::invalid_argument("ascii shape may only contain '#' and '.'");
        rows.push_back(std::move(line));
    }
    if (rows.empty())
        throw std::invalid_argument("ascii shape is empty");
    const std::size_t width = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != width)
            throw std::invalid_argument("ascii shape rows differ in length");
    std::vector<std::uint8_t> bitmap;
    for (const auto& r : rows)
        for (char c : r)
            bitmap.push_back(c == '#');
    return crop_bitmap(static_cast<int>(width), static_cast<int>(rows.size()), bitmap);
}

}  // namespace jatam
