#include "jatam/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace jatam {

double quantile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty())
        throw std::invalid_argument("quantile of an empty sample");
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    if (frac == 0.0 || sorted[lo] == sorted[hi])
        return sorted[lo];
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return quantile_sorted(v, 0.5);
}

MedianCI bootstrap_median_ci(std::span<const double> samples, std::size_t sample_size, std::size_t resamples,
                             SplitMix64& rng) {
    if (samples.empty())
        throw std::invalid_argument("bootstrap of an empty sample");
    if (sample_size == 0 || resamples == 0)
        throw std::invalid_argument("bootstrap sample size and resample count must be positive");
    MedianCI out;
    out.median = median({samples.begin(), samples.end()});
    std::vector<double> medians(resamples);
    std::vector<double> draw(sample_size);
    const auto n = static_cast<std::uint32_t>(samples.size());
    for (auto& m : medians) {
        for (auto& d : draw)
            d = samples[rng.below(n)];
        std::sort(draw.begin(), draw.end());
        m = quantile_sorted(draw, 0.5);
    }
    std::sort(medians.begin(), medians.end());
    out.lower = quantile_sorted(medians, 0.025);
    out.upper = quantile_sorted(medians, 0.975);
    return out;
}

TimeSummary summarize_times(std::span<const std::optional<int>> times, std::size_t sample_size,
                            std::size_t resamples, SplitMix64& rng) {
    TimeSummary s;
    s.runs = times.size();
    if (times.empty())
        return s;
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> v;
    v.reserve(times.size());
    for (const auto& t : times) {
        v.push_back(t ? static_cast<double>(*t) : inf);
        s.censored += !t;
    }
    const MedianCI ci = bootstrap_median_ci(v, sample_size, resamples, rng);
    auto finite = [](double x) { return std::isfinite(x) ? std::optional<double>(x) : std::nullopt; };
    s.median = finite(ci.median);
    s.ci_lo = finite(ci.lower);
    s.ci_hi = finite(ci.upper);
    return s;
}

}  // namespace jatam
