#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace jatam {

// Fixed-length bitstring. Bit 0 is the first bit of the genome and is stored
// as the most significant bit of byte 0; the text form reads the bits in
// genome order as one big-endian number.
class Genome {
public:
    Genome() = default;
    explicit Genome(std::size_t bit_length);

    std::size_t size() const { return bits_; }
    std::size_t byte_size() const { return bytes_.size(); }

    bool test(std::size_t i) const { return (bytes_[i >> 3] >> (7 - (i & 7))) & 1u; }
    void set(std::size_t i, bool v);
    void flip(std::size_t i) { bytes_[i >> 3] ^= static_cast<std::uint8_t>(0x80u >> (i & 7)); }

    std::uint8_t* data() { return bytes_.data(); }
    const std::uint8_t* data() const { return bytes_.data(); }

    // Clears padding bits past size() in the last byte.
    void normalize();

    // "0x<hex>/<bits>", ceil(bits/4) lowercase digits
    std::string to_string() const;
    static Genome parse(std::string_view text);

    // Genome whose bits spell `value` with bit size()-1 as the least significant.
    static Genome from_uint(std::uint64_t value, std::size_t bit_length);
    std::uint64_t to_uint() const;  // requires size() <= 64

    friend bool operator==(const Genome&, const Genome&) = default;

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t bits_ = 0;
};

std::size_t hamming_weight(const Genome& g);
std::size_t hamming_distance(const Genome& a, const Genome& b);
Genome complement(const Genome& g);

// Edge labels in N, E, S, W order as seen looking down on the grid.
struct Tile {
    std::array<std::uint8_t, 4> labels{};
    friend bool operator==(const Tile&, const Tile&) = default;
};

// tiles[0] is the seed.
struct TileSet {
    std::vector<Tile> tiles;
    friend bool operator==(const TileSet&, const TileSet&) = default;
};

std::string to_string(const TileSet& t);

struct FixedBit {
    std::size_t position;
    bool value;
};

class SearchSpace {
public:
    SearchSpace(unsigned tile_count, unsigned label_count, std::vector<FixedBit> fixed = {});

    // The 2^32 slice of S(3,8): third tile's West label and the low bit of its
    // South label held at zero.
    static SearchSpace s32_3_8();

    unsigned tile_count() const { return tiles_; }
    unsigned label_count() const { return labels_; }
    unsigned bits_per_label() const { return bits_per_label_; }
    std::size_t bit_length() const { return std::size_t{tiles_} * 4 * bits_per_label_; }
    std::size_t free_bit_count() const { return free_positions_.size(); }
    // 2^free_bit_count; free bit counts above 63 are rejected at construction
    std::uint64_t cardinality() const { return std::uint64_t{1} << free_positions_.size(); }

    const std::vector<FixedBit>& fixed_bits() const { return fixed_; }
    // free_positions()[j] is the genome position carrying index bit j
    const std::vector<std::size_t>& free_positions() const { return free_positions_; }

    bool contains(const Genome& g) const;

    friend bool operator==(const SearchSpace& a, const SearchSpace& b) {
        return a.tiles_ == b.tiles_ && a.labels_ == b.labels_ && a.free_positions_ == b.free_positions_ &&
               a.base_ == b.base_;
    }

private:
    friend Genome genome_at_index(const SearchSpace&, std::uint64_t);

    unsigned tiles_;
    unsigned labels_;
    unsigned bits_per_label_;
    std::vector<FixedBit> fixed_;
    std::vector<std::size_t> free_positions_;
    Genome base_;  // fixed bits at their forced values, free bits zero
};

TileSet decode_tileset(const Genome& g, const SearchSpace& s);
Genome encode_tileset(const TileSet& t, const SearchSpace& s);

// Free bit j of the result carries bit j of `index`; fixed bits hold their values.
Genome genome_at_index(const SearchSpace& s, std::uint64_t index);
std::uint64_t index_of_genome(const SearchSpace& s, const Genome& g);

}  // namespace jatam
