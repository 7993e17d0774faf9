#include "jatam/evolve.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jatam {

std::uint64_t poisson_sample(double lambda, SplitMix64& rng) {
    if (lambda < 0.0)
        throw std::invalid_argument("poisson mean must be non-negative");
    if (lambda == 0.0)
        return 0;
    std::poisson_distribution<std::uint64_t> d(lambda);
    return d(rng);
}

Mutator::Mutator(double lambda) : lambda_(lambda), poisson_(lambda > 0.0 ? lambda : 1.0) {
    if (lambda < 0.0)
        throw std::invalid_argument("mutation mean must be non-negative");
}

std::size_t Mutator::operator()(Genome& g, SplitMix64& rng) {
    if (lambda_ == 0.0 || g.size() == 0)
        return 0;
    const auto length = static_cast<std::uint32_t>(g.size());
    // The large-mean sampler caches a normal deviate; drop it so each draw
    // depends only on `rng`.
    poisson_.reset();
    const auto k = static_cast<std::uint32_t>(std::min<std::uint64_t>(poisson_(rng), length));
    if (k == length) {
        for (std::uint32_t i = 0; i < length; ++i)
            g.flip(i);
        return k;
    }
    // Redraw positions already taken.
    picked_.clear();
    while (picked_.size() < k) {
        const std::uint32_t pos = rng.below(length);
        if (std::find(picked_.begin(), picked_.end(), pos) == picked_.end())
            picked_.push_back(pos);
    }
    for (auto pos : picked_)
        g.flip(pos);
    return k;
}

Genome mutate(const Genome& g, double lambda, SplitMix64& rng) {
    Genome out = g;
    Mutator m(lambda);
    m(out, rng);
    return out;
}

std::size_t mutate_bitwise(Genome& g, double mu, SplitMix64& rng) {
    std::size_t flips = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (rng.uniform() < mu) {
            g.flip(i);
            ++flips;
        }
    return flips;
}

namespace {

void check_lengths(const Genome& a, const Genome& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("crossover parents differ in length");
}

}  // namespace

Genome crossover_single_point_at(const Genome& a, const Genome& b, std::size_t point) {
    check_lengths(a, b);
    if (point > a.size())
        throw std::invalid_argument("crossover point past the genome end");
    Genome child = b;
    const std::size_t whole = point / 8;
    std::copy(a.data(), a.data() + whole, child.data());
    if (point % 8) {
        const auto mask = static_cast<std::uint8_t>(0xffu << (8 - point % 8));
        child.data()[whole] = static_cast<std::uint8_t>((a.data()[whole] & mask) | (b.data()[whole] & ~mask));
    }
    return child;
}

Genome crossover_single_point(const Genome& a, const Genome& b, SplitMix64& rng) {
    check_lengths(a, b);
    if (a.size() == 0)
        return a;
    return crossover_single_point_at(a, b, rng.below(static_cast<std::uint32_t>(a.size())));
}

Genome crossover_uniform(const Genome& a, const Genome& b, SplitMix64& rng) {
    check_lengths(a, b);
    Genome child = a;
    for (std::size_t i = 0; i < child.byte_size(); i += 8) {
        const std::uint64_t pick = rng();
        for (std::size_t j = i; j < std::min(i + 8, child.byte_size()); ++j) {
            const auto m = static_cast<std::uint8_t>(pick >> (8 * (j - i)));
            child.data()[j] = static_cast<std::uint8_t>((a.data()[j] & m) | (b.data()[j] & ~m));
        }
    }
    child.normalize();
    return child;
}

std::size_t roulette_cutoff(std::span<const double> weights, double cutoff) {
    if (weights.empty())
        throw std::invalid_argument("roulette over an empty population");
    double partsum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        partsum += weights[i];
        if (partsum >= cutoff)
            return i;
    }
    return weights.size() - 1;
}

std::size_t roulette_select(std::span<const double> fitness, SplitMix64& rng) {
    return RouletteWheel(fitness)(rng);
}

RouletteWheel::RouletteWheel(std::span<const double> fitness) : prefix_(fitness.size()) {
    if (fitness.empty())
        throw std::invalid_argument("roulette over an empty population");
    double sum = 0.0;
    for (std::size_t i = 0; i < fitness.size(); ++i) {
        if (!(fitness[i] >= 0.0))
            throw std::invalid_argument("fitness must be non-negative");
        sum += fitness[i];
        prefix_[i] = sum;
    }
}

std::size_t RouletteWheel::operator()(SplitMix64& rng) const {
    const double total = prefix_.back();
    if (total <= 0.0)
        return rng.below(static_cast<std::uint32_t>(prefix_.size()));
    // u in (0, total], so a zero-weight slot can never be hit.
    const double u = (1.0 - rng.uniform()) * total;
    const auto it = std::lower_bound(prefix_.begin(), prefix_.end(), u);
    return it == prefix_.end() ? prefix_.size() - 1 : static_cast<std::size_t>(it - prefix_.begin());
}

double fujiyama_fitness(const Genome& g) {
    return static_cast<double>(hamming_weight(g));
}

RunRecord run_ga(const GAConfig& cfg, const FitnessFn& fitness) {
    if (cfg.population == 0 || cfg.population > 0xffffffffu)
        throw std::invalid_argument("population size out of range");
    if (cfg.cutoff < 1)
        throw std::invalid_argument("generation cutoff must be >= 1");
    if (!(cfg.mu_l >= 0.0))
        throw std::invalid_argument("muL must be non-negative");
    if (cfg.adaptation_share <= 0.0 || cfg.adaptation_share > 1.0)
        throw std::invalid_argument("adaptation share must be in (0, 1]");

    const std::size_t n = cfg.population;
    const int workers = cfg.workers > 0 ? cfg.workers : omp_get_max_threads();
    const auto needed = static_cast<std::size_t>(std::ceil(cfg.adaptation_share * static_cast<double>(n)));
    std::vector<Genome> pop(n, Genome(cfg.genome_length));
    std::vector<Genome> next(n, Genome(cfg.genome_length));
    std::vector<double> f(n);

    RunRecord rec;
    rec.population = n;
    for (int gen = 0; gen < cfg.cutoff; ++gen) {
#pragma omp parallel for num_threads(workers) schedule(static)
        for (std::size_t i = 0; i < n; ++i)
            f[i] = fitness(pop[i]);

        GenerationStats st;
        st.best = *std::max_element(f.begin(), f.end());
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sum += f[i];
            st.count_at_target += f[i] >= cfg.target_fitness;
        }
        st.mean = sum / static_cast<double>(n);
        rec.trace.push_back(st);
        if (!rec.discovery && st.best >= cfg.target_fitness)
            rec.discovery = gen;
        if (!rec.adaptation && st.count_at_target >= needed)
            rec.adaptation = gen;
        if (cfg.stop_when_adapted && rec.discovery && rec.adaptation)
            break;
        if (gen + 1 == cfg.cutoff)
            break;

        const RouletteWheel wheel(f);
#pragma omp parallel num_threads(workers)
        {
            Mutator mutator(cfg.mu_l);
#pragma omp for schedule(static)
            for (std::size_t i = 0; i < n; ++i) {
                SplitMix64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(gen), i));
                const Genome& a = pop[wheel(rng)];
                switch (cfg.reproduction) {
                case Reproduction::kAsexual:
                    next[i] = a;
                    break;
                case Reproduction::kSinglePoint:
                    next[i] = crossover_single_point(a, pop[wheel(rng)], rng);
                    break;
                case Reproduction::kUniform:
                    next[i] = crossover_uniform(a, pop[wheel(rng)], rng);
                    break;
                }
                mutator(next[i], rng);
            }
        }
        pop.swap(next);
    }
    return rec;
}

std::optional<int> discovery_time(const RunRecord& r, double threshold) {
    for (std::size_t g = 0; g < r.trace.size(); ++g)
        if (r.trace[g].best >= threshold)
            return static_cast<int>(g);
    return std::nullopt;
}

std::optional<int> adaptation_time(const RunRecord& r, double share) {
    const double needed = std::ceil(share * static_cast<double>(r.population));
    for (std::size_t g = 0; g < r.trace.size(); ++g)
        if (static_cast<double>(r.trace[g].count_at_target) >= needed)
            return static_cast<int>(g);
    return std::nullopt;
}

}  // namespace jatam
