#include "jatam/histogram.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace jatam {

void Histogram::record(std::uint64_t index, const Classification& c) {
    ++totals_[static_cast<std::size_t>(c.kind)];
    if (!c.has_shape())
        return;
    ShapeRecord r;
    if (c.kind == ClassKind::kDeterministic) {
        r.det_count = 1;
        r.first_det = index;
    } else if (c.kind == ClassKind::kStericNondet) {
        r.steric_count = 1;
        r.first_steric = index;
    } else {
        return;
    }
    r.shape = c.shape;
    absorb(c.hash, r);
}

void Histogram::absorb(ShapeHash h, const ShapeRecord& r) {
    auto [it, inserted] = shapes_.try_emplace(h, r);
    if (inserted)
        return;
    auto& mine = it->second;
    if (!mine.shape.same_shape(r.shape))
        ++collisions_;
    mine.det_count += r.det_count;
    mine.steric_count += r.steric_count;
    mine.first_det = std::min(mine.first_det, r.first_det);
    mine.first_steric = std::min(mine.first_steric, r.first_steric);
}

void Histogram::merge(const Histogram& other) {
    for (std::size_t i = 0; i < totals_.size(); ++i)
        totals_[i] += other.totals_[i];
    collisions_ += other.collisions_;
    for (const auto& [h, r] : other.shapes_)
        absorb(h, r);
}

std::uint64_t Histogram::total() const {
    return std::accumulate(totals_.begin(), totals_.end(), std::uint64_t{0});
}

std::size_t Histogram::deterministic_shape_count() const {
    return static_cast<std::size_t>(
        std::count_if(shapes_.begin(), shapes_.end(), [](const auto& kv) { return kv.second.det_count > 0; }));
}

std::vector<std::pair<ShapeHash, const ShapeRecord*>> ranked_rows(const Histogram& h) {
    std::vector<std::pair<ShapeHash, const ShapeRecord*>> rows;
    rows.reserve(h.shapes().size());
    for (const auto& [hash, r] : h.shapes())
        rows.emplace_back(hash, &r);
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second->det_count != b.second->det_count)
            return a.second->det_count > b.second->det_count;
        if (a.second->steric_count != b.second->steric_count)
            return a.second->steric_count > b.second->steric_count;
        return a.first < b.first;
    });
    return rows;
}

void write_csv(std::ostream& os, const Histogram& h, const SearchSpace& s, std::uint64_t cardinality) {
    os << "hash_hex,width,height,cell_count,det_count,steric_count,representative_genome,frequency\n";
    char buf[64];
    for (const auto& [hash, r] : ranked_rows(h)) {
        std::snprintf(buf, sizeof buf, "0x%08" PRIx32, hash);
        os << buf << ',' << r->shape.width << ',' << r->shape.height << ',' << r->shape.cell_count() << ','
           << r->det_count << ',' << r->steric_count << ',' << genome_at_index(s, r->representative()).to_string()
           << ',';
        std::snprintf(buf, sizeof buf, "%.10e", static_cast<double>(r->det_count) / static_cast<double>(cardinality));
        os << buf << '\n';
    }
}

std::vector<CsvRow> read_csv(std::istream& is) {
    std::vector<CsvRow> rows;
    std::string line;
    if (!std::getline(is, line) || line.rfind("hash_hex,", 0) != 0)
        throw std::runtime_error("histogram csv: missing header");
    for (int lineno = 2; std::getline(is, line); ++lineno) {
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');)
            f.push_back(cell);
        if (f.size() != 8)
            throw std::runtime_error("histogram csv: line " + std::to_string(lineno) + " has " +
                                     std::to_string(f.size()) + " fields");
        try {
            CsvRow r;
            r.hash = static_cast<ShapeHash>(std::stoul(f[0], nullptr, 16));
            r.width = std::stoi(f[1]);
            r.height = std::stoi(f[2]);
            r.cell_count = std::stoi(f[3]);
            r.det_count = std::stoull(f[4]);
            r.steric_count = std::stoull(f[5]);
            r.representative_genome = f[6];
            r.frequency = std::stod(f[7]);
            rows.push_back(std::move(r));
        } catch (const std::logic_error&) {
            throw std::runtime_error("histogram csv: bad number on line " + std::to_string(lineno));
        }
    }
    return rows;
}

}  // namespace jatam
