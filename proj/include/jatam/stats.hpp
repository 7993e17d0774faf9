#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "jatam/rng.hpp"

namespace jatam {

// Linear interpolation between order statistics; q in [0, 1].
double quantile_sorted(std::span<const double> sorted, double q);
double median(std::vector<double> v);

struct MedianCI {
    double median = 0.0;
    double lower = 0.0;  // 2.5th percentile of the bootstrap medians
    double upper = 0.0;  // 97.5th percentile
};

MedianCI bootstrap_median_ci(std::span<const double> samples, std::size_t sample_size, std::size_t resamples,
                             SplitMix64& rng);

// Medians of right-censored times. Censored runs enter as +infinity, which
// leaves the median exact as long as fewer than half are censored.
struct TimeSummary {
    std::optional<double> median;  // nullopt when more than half are censored
    std::optional<double> ci_lo;
    std::optional<double> ci_hi;
    std::size_t runs = 0;
    std::size_t censored = 0;
};

TimeSummary summarize_times(std::span<const std::optional<int>> times, std::size_t sample_size,
                            std::size_t resamples, SplitMix64& rng);

}  // namespace jatam
