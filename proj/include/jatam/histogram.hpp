#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "jatam/assembly.hpp"
#include "jatam/genome.hpp"
#include "jatam/shape.hpp"

namespace jatam {

inline constexpr std::uint64_t kNoIndex = std::numeric_limits<std::uint64_t>::max();

struct ShapeRecord {
    std::uint64_t det_count = 0;
    std::uint64_t steric_count = 0;
    // Lowest enumeration index seen in each class.
    std::uint64_t first_det = kNoIndex;
    std::uint64_t first_steric = kNoIndex;
    CroppedShape shape;

    std::uint64_t representative() const { return det_count ? first_det : first_steric; }
    friend bool operator==(const ShapeRecord& a, const ShapeRecord& b) {
        return a.det_count == b.det_count && a.steric_count == b.steric_count && a.first_det == b.first_det &&
               a.first_steric == b.first_steric && a.shape.same_shape(b.shape);
    }
};

// Per-shape tallies over a set of classified genomes. Merging is commutative
// and associative, so partial histograms may be combined in any order.
class Histogram {
public:
    void record(std::uint64_t index, const Classification& c);
    void merge(const Histogram& other);

    const std::map<ShapeHash, ShapeRecord>& shapes() const { return shapes_; }
    std::map<ShapeHash, ShapeRecord>& shapes() { return shapes_; }

    std::uint64_t count(ClassKind k) const { return totals_[static_cast<std::size_t>(k)]; }
    void set_count(ClassKind k, std::uint64_t n) { totals_[static_cast<std::size_t>(k)] = n; }
    std::uint64_t total() const;

    // Shape hashes seen with two different bitmaps.
    std::uint64_t collisions() const { return collisions_; }
    void set_collisions(std::uint64_t n) { collisions_ = n; }

    std::size_t deterministic_shape_count() const;

    friend bool operator==(const Histogram&, const Histogram&) = default;

private:
    void absorb(ShapeHash h, const ShapeRecord& r);

    std::map<ShapeHash, ShapeRecord> shapes_;
    std::array<std::uint64_t, 4> totals_{};
    std::uint64_t collisions_ = 0;
};

// Rows ordered by det_count, then steric_count (both descending), then hash.
std::vector<std::pair<ShapeHash, const ShapeRecord*>> ranked_rows(const Histogram& h);

// hash_hex,width,height,cell_count,det_count,steric_count,representative_genome,frequency
// `cardinality` is the size of the whole space, which frequencies refer to.
void write_csv(std::ostream& os, const Histogram& h, const SearchSpace& s, std::uint64_t cardinality);

struct CsvRow {
    ShapeHash hash = 0;
    int width = 0;
    int height = 0;
    int cell_count = 0;
    std::uint64_t det_count = 0;
    std::uint64_t steric_count = 0;
    std::string representative_genome;
    double frequency = 0.0;
};

// Throws std::runtime_error on a malformed file.
std::vector<CsvRow> read_csv(std::istream& is);

}  // namespace jatam
