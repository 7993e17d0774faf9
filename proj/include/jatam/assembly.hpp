#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "jatam/genome.hpp"
#include "jatam/grid.hpp"
#include "jatam/rng.hpp"
#include "jatam/shape.hpp"

namespace jatam {

// Labels pair up 1<->2, 3<->4, ...; 0 bonds nothing.
constexpr bool bonds(unsigned i, unsigned j) {
    return ((i & 1u) == 1u && j == i + 1) || ((i & 1u) == 0u && i > 0 && j == i - 1);
}

// A label is active when its partner exists in the alphabet [0, label_count).
constexpr bool is_active(unsigned label, unsigned label_count) {
    if (label == 0)
        return false;
    const unsigned partner = (label & 1u) ? label + 1 : label - 1;
    return partner < label_count;
}

// Edge labels of `t` as placed with `orientation` clockwise quarter turns,
// indexed by the direction each edge faces.
constexpr std::array<std::uint8_t, 4> oriented_labels(const Tile& t, unsigned orientation) {
    std::array<std::uint8_t, 4> out{};
    for (unsigned dir = 0; dir < 4; ++dir)
        out[dir] = t.labels[(dir + 4 - (orientation & 3u)) & 3u];
    return out;
}

// Four oriented labels packed one byte per direction (N in the low byte).
using PackedEdges = std::uint32_t;

constexpr PackedEdges pack_edges(const std::array<std::uint8_t, 4>& e) {
    return PackedEdges{e[0]} | PackedEdges{e[1]} << 8 | PackedEdges{e[2]} << 16 | PackedEdges{e[3]} << 24;
}
constexpr std::uint8_t edge_of(PackedEdges e, unsigned dir) { return static_cast<std::uint8_t>(e >> (8 * dir)); }

struct BondingEntry {
    Placement placement;
    PackedEdges edges;  // in situ
    friend bool operator==(const BondingEntry&, const BondingEntry&) = default;
};

// For every label l: the placements that bond when set directly north of a
// tile exposing l on its north edge, one entry per distinct in-situ edge
// configuration of each tile. Other approach directions are the same lists
// rotated, precomputed in for_direction().
class BondingTable {
public:
    BondingTable(const TileSet& t, unsigned label_count);

    unsigned label_count() const { return label_count_; }

    std::span<const BondingEntry> entries(unsigned label) const { return for_direction(label, kNorth); }

    // Placements bonding to a neighbour that exposes `label` toward a new
    // cell lying in direction `dir` from that neighbour.
    std::span<const BondingEntry> for_direction(unsigned label, unsigned dir) const {
        const auto& v = lists_[label * 4 + dir];
        return {v.data(), v.size()};
    }

private:
    unsigned label_count_;
    std::vector<std::vector<BondingEntry>> lists_;  // [label * 4 + dir]
};

// How a candidate tile must relate to occupied neighbours it does not bond to.
enum class ContactRule : std::uint8_t {
    // Only one bond is required; all other contacts are ignored. When two
    // occupied neighbours call for different tiles the run stops with
    // kStericConflict: the outcome would depend on which arm arrived first.
    kPermissive,
    // An active label may not face a non-partner active label, and any
    // remaining ambiguity at a cell is trivial non-determinism.
    kStrict,
};

struct AssemblyParams {
    int grid_dim = 19;
    ContactRule contact = ContactRule::kPermissive;
};

enum class OutcomeKind : std::uint8_t { kBounded, kUnbound, kTrivialNondet, kStericConflict };

struct AssemblyOutcome {
    OutcomeKind kind;
    AssemblyGrid grid;  // final board for kBounded, the partial board otherwise
};

class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Reusable workspace for repeated assemblies of one tile set. The board is
// cleared incrementally: only cells touched by the previous run are reset.
class Assembler {
public:
    Assembler(const TileSet& tiles, unsigned label_count, AssemblyParams params = {});

    OutcomeKind run(SplitMix64& rng);

    const AssemblyParams& params() const { return params_; }
    const BondingTable& bonding_table() const { return table_; }

    // Views of the last run.
    AssemblyGrid grid() const;
    int placed_count() const { return static_cast<int>(placed_.size()); }
    ShapeHash shape_hash() const;
    CroppedShape cropped() const;

private:
    bool push(std::uint16_t cell);
    void reset();
    std::size_t cell_of(int x, int y) const { return static_cast<std::size_t>((y + 1) * pitch_ + x + 1); }

    std::vector<Tile> tiles_;
    unsigned label_count_;
    AssemblyParams params_;
    BondingTable table_;
    std::array<bool, 256> active_{};

    int dim_;
    int pitch_ = 0;
    std::vector<std::uint8_t> code_;    // 0 empty, else 1 + tile*4 + orientation
    std::vector<PackedEdges> edges_;    // in-situ edges of occupied cells
    std::vector<std::uint8_t> border_;  // 1 on the outermost ring
    std::vector<std::uint8_t> marked_;  // 1 while the cell sits on the movelist
    std::vector<std::uint16_t> stack_;
    std::size_t stack_size_ = 0;
    std::vector<std::uint16_t> placed_;
    std::array<int, 4> step_{};
};

AssemblyOutcome assemble_once(const TileSet& t, unsigned label_count, const AssemblyParams& params, SplitMix64& rng);

// Cell-wise equality in (tile, orientation).
bool outcome_equivalent(const AssemblyGrid& a, const AssemblyGrid& b);

enum class ClassKind : std::uint8_t { kDeterministic, kTrivialNondet, kStericNondet, kUnbound };

const char* to_string(ClassKind k);

struct Classification {
    ClassKind kind = ClassKind::kDeterministic;
    // kDeterministic: the shape every run produced. kStericNondet: the shape
    // produced most often (earliest run wins ties). Unset otherwise, and for
    // steric sets whose runs all stopped at a conflict.
    ShapeHash hash = 0;
    CroppedShape shape;

    bool has_shape() const { return shape.width > 0; }
};

struct ClassifyParams {
    AssemblyParams assembly;
    int redundancy = 8;  // k
    bool rotation_invariant = false;
};

// Runs k assemblies; run j draws from SplitMix64(derive_seed(stream_key, j)).
// Precedence across runs: trivial > unbound > steric. A run ending in
// kStericConflict makes the set steric even if every finished run agrees.
Classification classify_tileset(const TileSet& t, unsigned label_count, const ClassifyParams& params,
                                std::uint64_t stream_key);
Classification classify_tileset(Assembler& assembler, const ClassifyParams& params, std::uint64_t stream_key);

// Class after the first k runs for each k in `prefixes` (ascending), sharing
// the same run streams as classify_tileset.
std::vector<ClassKind> classify_prefixes(Assembler& assembler, const ClassifyParams& params,
                                         std::span<const int> prefixes, std::uint64_t stream_key);

}  // namespace jatam
