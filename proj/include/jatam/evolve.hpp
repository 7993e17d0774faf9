#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "jatam/genome.hpp"
#include "jatam/rng.hpp"

namespace jatam {

// Number of bits to flip, Poisson distributed with mean lambda.
std::uint64_t poisson_sample(double lambda, SplitMix64& rng);

// Flips min(k, L) distinct uniformly chosen bits of g, k ~ Poisson(lambda).
// Returns the number of bits flipped.
class Mutator {
public:
    explicit Mutator(double lambda);

    double lambda() const { return lambda_; }
    std::size_t operator()(Genome& g, SplitMix64& rng);

private:
    double lambda_;
    std::poisson_distribution<std::uint64_t> poisson_;
    std::vector<std::uint32_t> picked_;
};

Genome mutate(const Genome& g, double lambda, SplitMix64& rng);

// Flips every bit independently with probability mu. Baseline for Mutator.
std::size_t mutate_bitwise(Genome& g, double mu, SplitMix64& rng);

// Positions [0, point) come from a, [point, L) from b.
Genome crossover_single_point_at(const Genome& a, const Genome& b, std::size_t point);
Genome crossover_single_point(const Genome& a, const Genome& b, SplitMix64& rng);
Genome crossover_uniform(const Genome& a, const Genome& b, SplitMix64& rng);

// First index whose running sum of weights reaches `cutoff`; the last index
// when the cutoff exceeds the total.
std::size_t roulette_cutoff(std::span<const double> weights, double cutoff);

// Fitness-proportional choice; uniform when every weight is zero.
std::size_t roulette_select(std::span<const double> fitness, SplitMix64& rng);

// Prefix sums built once per generation, then O(log N) per draw.
class RouletteWheel {
public:
    explicit RouletteWheel(std::span<const double> fitness);

    double total() const { return prefix_.empty() ? 0.0 : prefix_.back(); }
    std::size_t operator()(SplitMix64& rng) const;

private:
    std::vector<double> prefix_;
};

double fujiyama_fitness(const Genome& g);

enum class Reproduction : std::uint8_t { kAsexual, kSinglePoint, kUniform };

struct GAConfig {
    std::size_t population = 512;
    std::size_t genome_length = 32;
    double mu_l = 0.3;  // expected flips per genome per generation
    Reproduction reproduction = Reproduction::kAsexual;
    int cutoff = 20000;  // generations 0 .. cutoff-1 are evaluated
    double target_fitness = 25.0;
    double adaptation_share = 0.5;
    std::uint64_t seed = 1;
    int workers = 0;              // 0: OpenMP default
    bool stop_when_adapted = true;
};

struct GenerationStats {
    double best = 0.0;
    double mean = 0.0;
    std::size_t count_at_target = 0;
};

struct RunRecord {
    std::vector<GenerationStats> trace;  // index = generation
    std::size_t population = 0;
    std::optional<int> discovery;   // nullopt: censored
    std::optional<int> adaptation;
};

using FitnessFn = std::function<double(const Genome&)>;

// Generation 0 is the all-zero population. Each child is drawn from its own
// stream derive_seed(seed, generation, child), so results do not depend on
// the number of workers.
RunRecord run_ga(const GAConfig& cfg, const FitnessFn& fitness);

// First generation whose best individual reaches `threshold`.
std::optional<int> discovery_time(const RunRecord& r, double threshold);
// First generation with at least share * population individuals at the
// target the run was recorded against.
std::optional<int> adaptation_time(const RunRecord& r, double share);

}  // namespace jatam
