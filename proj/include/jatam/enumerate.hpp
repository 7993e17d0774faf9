#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "jatam/assembly.hpp"
#include "jatam/genome.hpp"
#include "jatam/histogram.hpp"

namespace jatam {

struct EnumerateParams {
    ClassifyParams classify;
    std::uint64_t seed = 1;
    std::uint64_t batch_size = 1u << 16;
    int workers = 0;  // 0: OpenMP default
    // 1 visits every index. Otherwise the space is cut into blocks of `stride`
    // consecutive indices and one index is drawn from each block.
    std::uint64_t stride = 1;
};

// Number of genomes visited and the enumeration index of the i-th one.
std::uint64_t item_count(const SearchSpace& s, const EnumerateParams& p);
std::uint64_t item_index(const SearchSpace& s, const EnumerateParams& p, std::uint64_t item);

// Stream key for the k runs classifying enumeration index `index`.
inline std::uint64_t genome_stream_key(std::uint64_t seed, std::uint64_t index) { return derive_seed(seed, index); }

// Classifies items [first, last) on the OpenMP worker pool.
Histogram classify_items(const SearchSpace& s, const EnumerateParams& p, std::uint64_t first, std::uint64_t last);
// Single-threaded reference for classify_items.
Histogram classify_items_serial(const SearchSpace& s, const EnumerateParams& p, std::uint64_t first,
                                std::uint64_t last);

struct EnumerationState {
    SearchSpace space;
    EnumerateParams params;
    std::uint64_t next_batch = 0;
    Histogram histogram;

    std::uint64_t batch_count() const;
    bool done() const { return next_batch >= batch_count(); }
};

struct EnumerationHooks {
    std::function<void(std::uint64_t batches_done, std::uint64_t batch_total)> progress;
    std::string checkpoint_path;  // empty: no checkpoints
    std::uint64_t checkpoint_every = 64;
};

// Processes the remaining batches of `state`, writing a checkpoint every
// `checkpoint_every` batches and once more at the end.
void run_enumeration(EnumerationState& state, const EnumerationHooks& hooks = {});

Histogram enumerate_space(const SearchSpace& s, const EnumerateParams& p);

// Fraction of the genomes that are non-deterministic after `reference_k` runs
// yet look deterministic after only k runs, for each k in `ks`. The first k
// runs of every genome are shared with the reference.
struct Misclassification {
    int k;
    std::uint64_t misclassified;
    std::uint64_t nondeterministic;  // at reference_k
    double fraction() const {
        return nondeterministic ? static_cast<double>(misclassified) / static_cast<double>(nondeterministic) : 0.0;
    }
};
std::vector<Misclassification> misclassification_curve(const SearchSpace& s, const EnumerateParams& p,
                                                        const std::vector<int>& ks, int reference_k);

}  // namespace jatam
