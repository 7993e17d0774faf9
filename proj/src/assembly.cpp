#include "jatam/assembly.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace jatam {

BondingTable::BondingTable(const TileSet& t, unsigned label_count)
    : label_count_(label_count), lists_(static_cast<std::size_t>(label_count) * 4) {
    if (t.tiles.size() > 63)
        throw std::invalid_argument("at most 63 tile types are supported");
    for (unsigned label = 0; label < label_count; ++label) {
        auto& north = lists_[label * 4 + kNorth];
        for (std::size_t ti = 0; ti < t.tiles.size(); ++ti) {
            const std::size_t tile_begin = north.size();
            for (unsigned r = 0; r < 4; ++r) {
                const auto edges = oriented_labels(t.tiles[ti], r);
                if (!bonds(label, edges[kSouth]))
                    continue;
                const PackedEdges packed = pack_edges(edges);
                const bool seen = std::any_of(north.begin() + static_cast<std::ptrdiff_t>(tile_begin), north.end(),
                                              [&](const BondingEntry& e) { return e.edges == packed; });
                if (!seen)
                    north.push_back({{static_cast<std::uint8_t>(ti), static_cast<std::uint8_t>(r)}, packed});
            }
        }
        for (unsigned dir = 1; dir < 4; ++dir) {
            auto& rotated = lists_[label * 4 + dir];
            for (const auto& e : north) {
                const auto r = static_cast<std::uint8_t>((e.placement.orientation + dir) & 3u);
                rotated.push_back({{e.placement.tile, r}, pack_edges(oriented_labels(t.tiles[e.placement.tile], r))});
            }
        }
    }
}

// ---------------------------------------------------------------------------

Assembler::Assembler(const TileSet& tiles, unsigned label_count, AssemblyParams params)
    : tiles_(tiles.tiles), label_count_(label_count), params_(params), table_(tiles, label_count),
      dim_(params.grid_dim) {
    if (tiles_.empty())
        throw std::invalid_argument("tile set is empty");
    if (label_count > 256)
        throw std::invalid_argument("label count above 256");
    for (const auto& tile : tiles_)
        for (auto l : tile.labels)
            if (l >= label_count)
                throw std::invalid_argument("tile label out of range");
    if (dim_ < 3 || dim_ % 2 == 0 || dim_ > 255)
        throw std::invalid_argument("grid dimension must be odd and in [3, 255]");
    for (unsigned l = 0; l < label_count; ++l)
        active_[l] = is_active(l, label_count);

    // The board is stored with a one-cell empty margin so neighbour lookups
    // from border cells stay in bounds.
    pitch_ = dim_ + 2;
    const auto cells = static_cast<std::size_t>(pitch_) * pitch_;
    code_.assign(cells, 0);
    edges_.assign(cells, 0);
    marked_.assign(cells, 0);
    border_.assign(cells, 0);
    // A cell sits on the movelist at most once at a time, so d^2 slots suffice.
    stack_.assign(static_cast<std::size_t>(dim_) * dim_, 0);
    placed_.reserve(static_cast<std::size_t>(dim_) * dim_);
    for (int y = 0; y < dim_; ++y)
        for (int x = 0; x < dim_; ++x)
            border_[cell_of(x, y)] = x == 0 || y == 0 || x == dim_ - 1 || y == dim_ - 1;
    step_ = {-pitch_, 1, pitch_, -1};
}

void Assembler::reset() {
    for (auto c : placed_)
        code_[c] = 0;
    placed_.clear();
    for (std::size_t i = 0; i < stack_size_; ++i)
        marked_[stack_[i]] = 0;
    stack_size_ = 0;
}

bool Assembler::push(std::uint16_t cell) {
    if (stack_size_ >= stack_.size())
        return false;
    stack_[stack_size_++] = cell;
    marked_[cell] = 1;
    return true;
}

OutcomeKind Assembler::run(SplitMix64& rng) {
    reset();
    const bool strict = params_.contact == ContactRule::kStrict;

    enum class Site { kEmpty, kPlace, kTrivial, kConflict };
    struct Choice {
        Placement placement{};
        PackedEdges edges = 0;
    };
    // What the occupied neighbours of an empty cell ask for.
    auto evaluate = [&](std::uint16_t cell, Choice& out) {
        std::array<int, 4> neighbour{};
        for (unsigned dir = 0; dir < 4; ++dir)
            neighbour[dir] = code_[cell + step_[dir]] ? cell + step_[dir] : -1;

        bool found = false;
        bool cross = false;
        for (unsigned dir = 0; dir < 4; ++dir) {
            if (neighbour[dir] < 0)
                continue;
            const unsigned back = opposite(dir);
            const std::uint8_t label = edge_of(edges_[neighbour[dir]], back);
            if (!active_[label])
                continue;
            bool found_here = false;
            PackedEdges here_edges = 0;
            for (const auto& entry : table_.for_direction(label, back)) {
                if (strict) {
                    bool clash = false;
                    for (unsigned other = 0; other < 4 && !clash; ++other) {
                        if (other == dir || neighbour[other] < 0)
                            continue;
                        const std::uint8_t mine = edge_of(entry.edges, other);
                        const std::uint8_t theirs = edge_of(edges_[neighbour[other]], opposite(other));
                        clash = active_[mine] && active_[theirs] && !bonds(mine, theirs);
                    }
                    if (clash)
                        continue;
                }
                // Two configurations offered through the same face: the
                // choice does not depend on growth order.
                if (!found_here) {
                    found_here = true;
                    here_edges = entry.edges;
                } else if (entry.edges != here_edges) {
                    return Site::kTrivial;
                }
                if (!found) {
                    found = true;
                    out = {entry.placement, entry.edges};
                } else if (entry.edges != out.edges) {
                    cross = true;
                } else if (entry.placement.tile * 4 + entry.placement.orientation <
                           out.placement.tile * 4 + out.placement.orientation) {
                    out.placement = entry.placement;
                }
            }
        }
        // Faces disagree: whichever arm had arrived first would have decided.
        if (cross)
            return strict ? Site::kTrivial : Site::kConflict;
        return found ? Site::kPlace : Site::kEmpty;
    };

    auto place = [&](std::uint16_t cell, const Choice& c) {
        code_[cell] = static_cast<std::uint8_t>(1 + c.placement.tile * 4 + c.placement.orientation);
        edges_[cell] = c.edges;
        placed_.push_back(cell);
    };
    // Every empty cell the new tile faces with an active edge is checked at
    // once for trivial ambiguity, so it is seen as soon as it exists rather
    // than when its cell happens to be popped. A conflict between arms is
    // still only noticed when the cell is popped. New cells are queued in
    // random order.
    auto expand = [&](std::uint16_t cell) -> std::optional<OutcomeKind> {
        std::array<std::uint16_t, 4> next{};
        unsigned n = 0;
        const PackedEdges e = edges_[cell];
        Choice scratch;
        for (unsigned dir = 0; dir < 4; ++dir) {
            if (!active_[edge_of(e, dir)])
                continue;
            const auto nb = static_cast<std::uint16_t>(cell + step_[dir]);
            if (code_[nb] != 0)
                continue;
            const Site site = evaluate(nb, scratch);
            if (site == Site::kTrivial)
                return OutcomeKind::kTrivialNondet;
            if (site == Site::kEmpty)
                continue;
            if (marked_[nb] == 0)
                next[n++] = nb;
        }
        for (unsigned i = n; i > 1; --i)
            std::swap(next[i - 1], next[rng.below(i)]);
        for (unsigned i = 0; i < n; ++i)
            if (!push(next[i]))
                throw CapacityError("movelist capacity exceeded");
        return std::nullopt;
    };

    const auto seed_cell = static_cast<std::uint16_t>(cell_of(dim_ / 2, dim_ / 2));
    place(seed_cell, {{0, 0}, pack_edges(oriented_labels(tiles_[0], 0))});
    if (auto stop = expand(seed_cell))
        return *stop;

    while (stack_size_ > 0) {
        const std::uint16_t cell = stack_[--stack_size_];
        marked_[cell] = 0;
        Choice c;
        const Site site = evaluate(cell, c);
        if (site == Site::kConflict)
            return OutcomeKind::kStericConflict;
        if (site == Site::kTrivial)
            return OutcomeKind::kTrivialNondet;
        if (site == Site::kEmpty)
            continue;
        place(cell, c);
        if (border_[cell])
            return OutcomeKind::kUnbound;
        if (auto stop = expand(cell))
            return *stop;
    }
    return OutcomeKind::kBounded;
}

AssemblyGrid Assembler::grid() const {
    AssemblyGrid g(dim_);
    for (auto c : placed_)
        g.codes()[static_cast<std::size_t>((c / pitch_ - 1) * dim_ + c % pitch_ - 1)] = code_[c];
    return g;
}

ShapeHash Assembler::shape_hash() const {
    int x0 = dim_, y0 = dim_, x1 = -1, y1 = -1;
    for (auto c : placed_) {
        const int x = c % pitch_ - 1, y = c / pitch_ - 1;
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    }
    OatHasher h;
    h.add(static_cast<std::uint8_t>(x1 - x0 + 1));
    h.add(static_cast<std::uint8_t>(y1 - y0 + 1));
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x)
            if (code_[cell_of(x, y)]) {
                h.add(static_cast<std::uint8_t>(x - x0));
                h.add(static_cast<std::uint8_t>(y - y0));
            }
    return h.finish();
}

CroppedShape Assembler::cropped() const {
    return crop(grid());
}

AssemblyOutcome assemble_once(const TileSet& t, unsigned label_count, const AssemblyParams& params, SplitMix64& rng) {
    Assembler a(t, label_count, params);
    const OutcomeKind kind = a.run(rng);
    return {kind, a.grid()};
}

bool outcome_equivalent(const AssemblyGrid& a, const AssemblyGrid& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("outcome_equivalent: grid dimensions differ");
    return a.codes() == b.codes();
}

const char* to_string(ClassKind k) {
    switch (k) {
    case ClassKind::kDeterministic: return "deterministic";
    case ClassKind::kTrivialNondet: return "trivial_nondet";
    case ClassKind::kStericNondet: return "steric_nondet";
    case ClassKind::kUnbound: return "unbound";
    }
    return "?";
}

// ---------------------------------------------------------------------------

namespace {

// Folds run outcomes into a class as runs arrive.
class RunTally {
public:
    explicit RunTally(bool rotation_invariant) : rotation_invariant_(rotation_invariant) {}

    // Returns false once the class is settled as trivially non-deterministic.
    bool add(OutcomeKind kind, const Assembler& a) {
        if (kind == OutcomeKind::kTrivialNondet) {
            trivial_ = true;
            return false;
        }
        if (kind == OutcomeKind::kUnbound) {
            unbound_ = true;
            return true;
        }
        if (kind == OutcomeKind::kStericConflict) {
            conflict_ = true;
            return true;
        }
        const ShapeHash h = rotation_invariant_ ? rotation_invariant_hash(a.cropped()) : a.shape_hash();
        for (auto& s : seen_)
            if (s.hash == h) {
                ++s.count;
                return true;
            }
        seen_.push_back({h, 1, a.cropped()});
        return true;
    }

    ClassKind kind() const {
        if (trivial_)
            return ClassKind::kTrivialNondet;
        if (unbound_)
            return ClassKind::kUnbound;
        return conflict_ || seen_.size() > 1 ? ClassKind::kStericNondet : ClassKind::kDeterministic;
    }

    Classification result() && {
        Classification c;
        c.kind = kind();
        if ((c.kind == ClassKind::kDeterministic || c.kind == ClassKind::kStericNondet) && !seen_.empty()) {
            auto best = seen_.begin();
            for (auto it = seen_.begin(); it != seen_.end(); ++it)
                if (it->count > best->count)
                    best = it;
            c.hash = best->hash;
            c.shape = std::move(best->shape);
        }
        return c;
    }

private:
    struct Seen {
        ShapeHash hash;
        int count;
        CroppedShape shape;
    };
    bool rotation_invariant_;
    bool trivial_ = false;
    bool unbound_ = false;
    bool conflict_ = false;
    std::vector<Seen> seen_;
};

}  // namespace

Classification classify_tileset(Assembler& assembler, const ClassifyParams& params, std::uint64_t stream_key) {
    if (params.redundancy < 1)
        throw std::invalid_argument("redundancy k must be >= 1");
    RunTally tally(params.rotation_invariant);
    for (int j = 0; j < params.redundancy; ++j) {
        SplitMix64 rng(derive_seed(stream_key, static_cast<std::uint64_t>(j)));
        if (!tally.add(assembler.run(rng), assembler))
            break;
    }
    return std::move(tally).result();
}

Classification classify_tileset(const TileSet& t, unsigned label_count, const ClassifyParams& params,
                                std::uint64_t stream_key) {
    Assembler a(t, label_count, params.assembly);
    return classify_tileset(a, params, stream_key);
}

std::vector<ClassKind> classify_prefixes(Assembler& assembler, const ClassifyParams& params,
                                         std::span<const int> prefixes, std::uint64_t stream_key) {
    std::vector<ClassKind> out;
    out.reserve(prefixes.size());
    RunTally tally(params.rotation_invariant);
    int done = 0;
    bool settled = false;
    for (int k : prefixes) {
        if (k < 1 || k < done)
            throw std::invalid_argument("prefixes must be positive and ascending");
        for (; done < k && !settled; ++done) {
            SplitMix64 rng(derive_seed(stream_key, static_cast<std::uint64_t>(done)));
            settled = !tally.add(assembler.run(rng), assembler);
        }
        out.push_back(tally.kind());
    }
    return out;
}

}  // namespace jatam
