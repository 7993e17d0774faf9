#include "jatam/genome.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace jatam {

Genome::Genome(std::size_t bit_length) : bytes_((bit_length + 7) / 8, 0), bits_(bit_length) {}

void Genome::set(std::size_t i, bool v) {
    const auto mask = static_cast<std::uint8_t>(0x80u >> (i & 7));
    if (v)
        bytes_[i >> 3] |= mask;
    else
        bytes_[i >> 3] &= static_cast<std::uint8_t>(~mask);
}

void Genome::normalize() {
    if (bits_ % 8 != 0)
        bytes_.back() &= static_cast<std::uint8_t>(0xFFu << (8 - bits_ % 8));
}

std::string Genome::to_string() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    const std::size_t digits = (bits_ + 3) / 4;
    std::string hex(digits, '0');
    // Walk from the least significant end (last genome bit) in nibbles.
    for (std::size_t d = 0; d < digits; ++d) {
        unsigned nibble = 0;
        for (std::size_t k = 0; k < 4; ++k) {
            const std::size_t from_end = d * 4 + k;
            if (from_end < bits_ && test(bits_ - 1 - from_end))
                nibble |= 1u << k;
        }
        hex[digits - 1 - d] = kDigits[nibble];
    }
    return "0x" + hex + "/" + std::to_string(bits_);
}

Genome Genome::parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos || text.size() < 3 || text.substr(0, 2) != "0x")
        throw std::invalid_argument("genome text must look like 0x<hex>/<bits>: " + std::string(text));
    const auto hex = text.substr(2, slash - 2);
    const auto len_text = text.substr(slash + 1);
    std::size_t bits = 0;
    const auto [ptr, ec] = std::from_chars(len_text.data(), len_text.data() + len_text.size(), bits);
    if (ec != std::errc{} || ptr != len_text.data() + len_text.size() || bits == 0)
        throw std::invalid_argument("bad genome bit length: " + std::string(text));
    if (hex.empty())
        throw std::invalid_argument("empty genome hex: " + std::string(text));

    Genome g(bits);
    std::size_t from_end = 0;
    for (auto it = hex.rbegin(); it != hex.rend(); ++it) {
        const char c = *it;
        unsigned v;
        if (c >= '0' && c <= '9')
            v = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f')
            v = static_cast<unsigned>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F')
            v = static_cast<unsigned>(c - 'A' + 10);
        else
            throw std::invalid_argument("bad hex digit in genome: " + std::string(text));
        for (unsigned k = 0; k < 4; ++k, ++from_end) {
            if (!((v >> k) & 1u))
                continue;
            if (from_end >= bits)
                throw std::invalid_argument("genome value exceeds bit length: " + std::string(text));
            g.set(bits - 1 - from_end, true);
        }
    }
    return g;
}

Genome Genome::from_uint(std::uint64_t value, std::size_t bit_length) {
    if (bit_length < 64 && (value >> bit_length) != 0)
        throw std::invalid_argument("value does not fit the genome length");
    Genome g(bit_length);
    for (std::size_t k = 0; k < bit_length && k < 64; ++k)
        if ((value >> k) & 1u)
            g.set(bit_length - 1 - k, true);
    return g;
}

std::uint64_t Genome::to_uint() const {
    if (bits_ > 64)
        throw std::invalid_argument("genome longer than 64 bits");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < bits_; ++i)
        v = (v << 1) | (test(i) ? 1u : 0u);
    return v;
}

std::size_t hamming_weight(const Genome& g) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < g.byte_size(); ++i)
        n += static_cast<std::size_t>(std::popcount(g.data()[i]));
    return n;
}

std::size_t hamming_distance(const Genome& a, const Genome& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("hamming_distance: length mismatch");
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.byte_size(); ++i)
        n += static_cast<std::size_t>(std::popcount(static_cast<std::uint8_t>(a.data()[i] ^ b.data()[i])));
    return n;
}

Genome complement(const Genome& g) {
    Genome c = g;
    for (std::size_t i = 0; i < c.byte_size(); ++i)
        c.data()[i] = static_cast<std::uint8_t>(~c.data()[i]);
    c.normalize();
    return c;
}

std::string to_string(const TileSet& t) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < t.tiles.size(); ++i) {
        const auto& l = t.tiles[i].labels;
        os << (i ? "," : "") << '(' << int(l[0]) << ',' << int(l[1]) << ',' << int(l[2]) << ',' << int(l[3]) << ')';
    }
    os << ']';
    return os.str();
}

// ---------------------------------------------------------------------------

SearchSpace::SearchSpace(unsigned tile_count, unsigned label_count, std::vector<FixedBit> fixed)
    : tiles_(tile_count), labels_(label_count), bits_per_label_(0), fixed_(std::move(fixed)) {
    if (tile_count == 0)
        throw std::invalid_argument("search space needs at least one tile type");
    if (label_count < 2 || !std::has_single_bit(label_count))
        throw std::invalid_argument("label count must be a power of two >= 2");
    bits_per_label_ = static_cast<unsigned>(std::countr_zero(label_count));

    const std::size_t length = bit_length();
    std::vector<int> forced(length, -1);
    for (const auto& f : fixed_) {
        if (f.position >= length)
            throw std::invalid_argument("fixed bit position outside the genome");
        if (forced[f.position] != -1)
            throw std::invalid_argument("bit fixed twice");
        forced[f.position] = f.value ? 1 : 0;
    }
    base_ = Genome(length);
    // Free bit 0 is the last free genome position, so for unmasked spaces the
    // enumeration index equals the genome read as a number.
    for (std::size_t p = length; p-- > 0;) {
        if (forced[p] == -1)
            free_positions_.push_back(p);
        else
            base_.set(p, forced[p] == 1);
    }
    if (free_positions_.size() > 63)
        throw std::invalid_argument("search space too large to enumerate by index");
}

SearchSpace SearchSpace::s32_3_8() {
    // Tile 2 occupies bits 24..35: N 24-26, E 27-29, S 30-32, W 33-35.
    return SearchSpace(3, 8, {{32, false}, {33, false}, {34, false}, {35, false}});
}

bool SearchSpace::contains(const Genome& g) const {
    if (g.size() != bit_length())
        return false;
    return std::all_of(fixed_.begin(), fixed_.end(), [&](const FixedBit& f) { return g.test(f.position) == f.value; });
}

TileSet decode_tileset(const Genome& g, const SearchSpace& s) {
    if (g.size() != s.bit_length())
        throw std::invalid_argument("decode_tileset: genome length does not match search space");
    const unsigned w = s.bits_per_label();
    TileSet t;
    t.tiles.resize(s.tile_count());
    std::size_t pos = 0;
    for (auto& tile : t.tiles)
        for (auto& label : tile.labels) {
            unsigned v = 0;
            for (unsigned k = 0; k < w; ++k)
                v = (v << 1) | (g.test(pos++) ? 1u : 0u);
            label = static_cast<std::uint8_t>(v);
        }
    return t;
}

Genome encode_tileset(const TileSet& t, const SearchSpace& s) {
    if (t.tiles.size() != s.tile_count())
        throw std::invalid_argument("encode_tileset: tile count does not match search space");
    const unsigned w = s.bits_per_label();
    Genome g(s.bit_length());
    std::size_t pos = 0;
    for (const auto& tile : t.tiles)
        for (const auto label : tile.labels) {
            if (label >= s.label_count())
                throw std::invalid_argument("encode_tileset: label out of range");
            for (unsigned k = w; k-- > 0;)
                g.set(pos++, (label >> k) & 1u);
        }
    return g;
}

Genome genome_at_index(const SearchSpace& s, std::uint64_t index) {
    if (index >= s.cardinality())
        throw std::invalid_argument("genome_at_index: index out of range");
    Genome g = s.base_;
    const auto& free = s.free_positions();
    for (std::size_t j = 0; j < free.size(); ++j)
        if ((index >> j) & 1u)
            g.set(free[j], true);
    return g;
}

std::uint64_t index_of_genome(const SearchSpace& s, const Genome& g) {
    if (!s.contains(g))
        throw std::invalid_argument("index_of_genome: genome not in search space");
    std::uint64_t index = 0;
    const auto& free = s.free_positions();
    for (std::size_t j = 0; j < free.size(); ++j)
        if (g.test(free[j]))
            index |= std::uint64_t{1} << j;
    return index;
}

}  // namespace jatam
