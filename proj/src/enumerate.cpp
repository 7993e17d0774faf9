#include "jatam/enumerate.hpp"

#include <omp.h>

#include <algorithm>
#include <stdexcept>

#include "jatam/checkpoint.hpp"

namespace jatam {

namespace {

constexpr std::uint64_t kSampleTag = 0x73616d706c65ULL;

void check_params(const EnumerateParams& p) {
    if (p.stride == 0)
        throw std::invalid_argument("stride must be positive");
    if (p.batch_size == 0)
        throw std::invalid_argument("batch size must be positive");
    if (p.classify.redundancy < 1)
        throw std::invalid_argument("redundancy k must be >= 1");
}

Classification classify_index(const SearchSpace& s, const EnumerateParams& p, std::uint64_t index) {
    const TileSet t = decode_tileset(genome_at_index(s, index), s);
    return classify_tileset(t, s.label_count(), p.classify, genome_stream_key(p.seed, index));
}

}  // namespace

std::uint64_t item_count(const SearchSpace& s, const EnumerateParams& p) {
    check_params(p);
    const std::uint64_t n = s.cardinality();
    return n / p.stride + (n % p.stride != 0);
}

std::uint64_t item_index(const SearchSpace& s, const EnumerateParams& p, std::uint64_t item) {
    if (p.stride == 1)
        return item;
    const std::uint64_t base = item * p.stride;
    const std::uint64_t width = std::min(p.stride, s.cardinality() - base);
    SplitMix64 rng(derive_seed(p.seed, item, kSampleTag));
    return base + rng() % width;
}

Histogram classify_items(const SearchSpace& s, const EnumerateParams& p, std::uint64_t first, std::uint64_t last) {
    check_params(p);
    const int workers = p.workers > 0 ? p.workers : omp_get_max_threads();
    const auto n = static_cast<std::int64_t>(last - first);
    std::vector<Histogram> partial(static_cast<std::size_t>(workers));
    std::exception_ptr failure;

#pragma omp parallel num_threads(workers)
    {
        Histogram& mine = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 256)
        for (std::int64_t i = 0; i < n; ++i) {
            try {
                const std::uint64_t index = item_index(s, p, first + static_cast<std::uint64_t>(i));
                mine.record(index, classify_index(s, p, index));
            } catch (...) {
#pragma omp critical(jatam_enumerate_failure)
                if (!failure)
                    failure = std::current_exception();
            }
        }
    }
    if (failure)
        std::rethrow_exception(failure);

    Histogram out;
    for (const auto& h : partial)
        out.merge(h);
    return out;
}

Histogram classify_items_serial(const SearchSpace& s, const EnumerateParams& p, std::uint64_t first,
                                std::uint64_t last) {
    check_params(p);
    Histogram out;
    for (std::uint64_t i = first; i < last; ++i) {
        const std::uint64_t index = item_index(s, p, i);
        out.record(index, classify_index(s, p, index));
    }
    return out;
}

std::uint64_t EnumerationState::batch_count() const {
    const std::uint64_t n = item_count(space, params);
    return n / params.batch_size + (n % params.batch_size != 0);
}

void run_enumeration(EnumerationState& state, const EnumerationHooks& hooks) {
    const std::uint64_t items = item_count(state.space, state.params);
    const std::uint64_t batches = state.batch_count();
    std::uint64_t since_checkpoint = 0;
    while (state.next_batch < batches) {
        const std::uint64_t first = state.next_batch * state.params.batch_size;
        const std::uint64_t last = std::min(items, first + state.params.batch_size);
        state.histogram.merge(classify_items(state.space, state.params, first, last));
        ++state.next_batch;
        if (hooks.progress)
            hooks.progress(state.next_batch, batches);
        if (!hooks.checkpoint_path.empty() && ++since_checkpoint >= hooks.checkpoint_every) {
            save_checkpoint(hooks.checkpoint_path, state);
            since_checkpoint = 0;
        }
    }
    if (!hooks.checkpoint_path.empty())
        save_checkpoint(hooks.checkpoint_path, state);
}

Histogram enumerate_space(const SearchSpace& s, const EnumerateParams& p) {
    EnumerationState state{s, p, 0, {}};
    run_enumeration(state);
    return std::move(state.histogram);
}

std::vector<Misclassification> misclassification_curve(const SearchSpace& s, const EnumerateParams& p,
                                                       const std::vector<int>& ks, int reference_k) {
    std::vector<int> prefixes = ks;
    prefixes.push_back(reference_k);
    if (!std::is_sorted(prefixes.begin(), prefixes.end()))
        throw std::invalid_argument("k values must be ascending and below the reference");

    const auto n = static_cast<std::int64_t>(item_count(s, p));
    const std::size_t m = ks.size();
    std::uint64_t nondet = 0;
    std::vector<std::uint64_t> missed(m, 0);
    const int workers = p.workers > 0 ? p.workers : omp_get_max_threads();

#pragma omp parallel num_threads(workers)
    {
        std::uint64_t my_nondet = 0;
        std::vector<std::uint64_t> my_missed(m, 0);
#pragma omp for schedule(dynamic, 256)
        for (std::int64_t i = 0; i < n; ++i) {
            const std::uint64_t index = item_index(s, p, static_cast<std::uint64_t>(i));
            Assembler a(decode_tileset(genome_at_index(s, index), s), s.label_count(), p.classify.assembly);
            const auto kinds = classify_prefixes(a, p.classify, prefixes, genome_stream_key(p.seed, index));
            if (kinds.back() == ClassKind::kDeterministic)
                continue;
            ++my_nondet;
            for (std::size_t j = 0; j < m; ++j)
                my_missed[j] += kinds[j] == ClassKind::kDeterministic;
        }
#pragma omp critical(jatam_misclassification)
        {
            nondet += my_nondet;
            for (std::size_t j = 0; j < m; ++j)
                missed[j] += my_missed[j];
        }
    }

    std::vector<Misclassification> out;
    for (std::size_t j = 0; j < m; ++j)
        out.push_back({ks[j], missed[j], nondet});
    return out;
}

}  // namespace jatam
