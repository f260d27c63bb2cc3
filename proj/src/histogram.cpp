#include "histomark/histogram.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "histomark/error.hpp"

namespace histomark {

int HistogramSpec::bin_of(double v) const noexcept {
    const double t = (v - lo) / bin_width;
    if (!(t >= 0.0) || !(t < static_cast<double>(bin_count))) return -1;
    return static_cast<int>(t);
}

HistogramSpec HistogramSpec::from_mean(double mean, double lambda, double bin_width) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw Error(ErrorCode::InvalidArgument, "lambda must be in (0, 1), got " + std::to_string(lambda));
    if (!(bin_width > 0.0) || !std::isfinite(bin_width))
        throw Error(ErrorCode::InvalidArgument, "bin width must be positive, got " + std::to_string(bin_width));
    if (!std::isfinite(mean)) throw Error(ErrorCode::InvalidArgument, "mean is not finite");
    HistogramSpec s;
    s.mean = mean;
    s.lambda = lambda;
    s.bin_width = bin_width;
    s.lo = (1.0 - lambda) * mean;
    // The small bias keeps exact multiples (2*0.6*100/2 == 60) from
    // losing a bin to representation error.
    const double l = 2.0 * lambda * mean / bin_width;
    s.bin_count = l > 0.0 ? static_cast<int>(std::floor(l + 1e-9)) : 0;
    return s;
}

HistogramSpec HistogramSpec::rescaled(double new_mean) const {
    HistogramSpec s = *this;
    s.mean = new_mean;
    s.lo = (1.0 - lambda) * new_mean;
    s.bin_width = bin_width * (new_mean / mean);
    return s;
}

std::size_t Histogram::total() const noexcept {
    return std::accumulate(counts.begin(), counts.end(), std::size_t{0}) + out_of_range;
}

double compute_mean(const Plane& plane) { return mean_of(plane); }

Histogram build_histogram(const Plane& plane, const HistogramSpec& spec) {
    Histogram h;
    h.spec = spec;
    h.counts.assign(static_cast<std::size_t>(std::max(spec.bin_count, 0)), 0);
    h.members.resize(h.counts.size());
    auto v = plane.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const int k = spec.bin_of(v[i]);
        if (k < 0) {
            ++h.out_of_range;
            continue;
        }
        ++h.counts[static_cast<std::size_t>(k)];
        h.members[static_cast<std::size_t>(k)].push_back(i);
    }
    return h;
}

Histogram build_histogram(const Plane& plane, double lambda, double bin_width) {
    return build_histogram(plane, HistogramSpec::from_mean(compute_mean(plane), lambda, bin_width));
}

std::vector<std::size_t> bin_counts(const Plane& plane, const HistogramSpec& spec) {
    const std::size_t nb = static_cast<std::size_t>(std::max(spec.bin_count, 0));
    std::vector<std::size_t> counts(nb, 0);
    auto v = plane.values();
    const auto n = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel
    {
        std::vector<std::size_t> local(nb, 0);
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const int k = spec.bin_of(v[static_cast<std::size_t>(i)]);
            if (k >= 0) ++local[static_cast<std::size_t>(k)];
        }
#pragma omp critical(histomark_bin_counts)
        for (std::size_t k = 0; k < nb; ++k) counts[k] += local[k];
    }
    return counts;
}

std::vector<std::size_t> bin_counts_reference(const Plane& plane, const HistogramSpec& spec) {
    std::vector<std::size_t> counts(static_cast<std::size_t>(std::max(spec.bin_count, 0)), 0);
    for (double v : plane.values()) {
        const int k = spec.bin_of(v);
        if (k >= 0) ++counts[static_cast<std::size_t>(k)];
    }
    return counts;
}

std::vector<int> bin_map(const Plane& plane, const HistogramSpec& spec) {
    auto v = plane.values();
    std::vector<int> idx(v.size());
    const auto n = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = spec.bin_of(v[static_cast<std::size_t>(i)]);
    return idx;
}

double group_ratio(const Histogram& hist, int g) {
    if (g < 1 || 2 * g > static_cast<int>(hist.counts.size()))
        throw Error(ErrorCode::InvalidArgument, "group index " + std::to_string(g) + " out of range");
    const auto a = hist.counts[static_cast<std::size_t>(2 * g - 2)];
    const auto b = hist.counts[static_cast<std::size_t>(2 * g - 1)];
    if (a == 0 && b == 0) throw Error(ErrorCode::DegenerateGroup, "group " + std::to_string(g) + " is empty");
    if (b == 0) return std::numeric_limits<double>::infinity();
    return static_cast<double>(a) / static_cast<double>(b);
}

}  // namespace histomark
