#pragma once

#include <cstddef>
#include <vector>

#include "histomark/image.hpp"

namespace histomark {

/// Binning of the range B = [(1-lambda)*mean, (1+lambda)*mean] into
/// `bin_count` half-open bins of width `bin_width`, starting at `lo`.
struct HistogramSpec {
    double mean = 0.0;
    double lambda = 0.6;
    double bin_width = 2.0;
    int bin_count = 0;
    double lo = 0.0;

    double hi() const noexcept { return lo + bin_count * bin_width; }
    double bin_lo(int k) const noexcept { return lo + k * bin_width; }
    double bin_hi(int k) const noexcept { return lo + (k + 1) * bin_width; }

    /// Index of the bin holding `v`, or -1 outside [lo, hi).
    int bin_of(double v) const noexcept;

    /// lo = (1-lambda)*mean, bin_count = floor(2*lambda*mean / bin_width).
    static HistogramSpec from_mean(double mean, double lambda, double bin_width);

    /// Same bin count, re-centred on `new_mean` with the width scaled by
    /// new_mean/mean. A value-scaled plane bins identically under the
    /// matching rescale.
    HistogramSpec rescaled(double new_mean) const;
};

struct Histogram {
    HistogramSpec spec;
    std::vector<std::size_t> counts;
    std::vector<std::vector<std::size_t>> members;  // pixel indices per bin
    std::size_t out_of_range = 0;

    std::size_t total() const noexcept;
};

/// Mean in extended precision; deterministic for any thread count.
double compute_mean(const Plane& plane);

Histogram build_histogram(const Plane& plane, const HistogramSpec& spec);
Histogram build_histogram(const Plane& plane, double lambda, double bin_width);

/// Counts only. Threads keep private tallies merged at the end.
std::vector<std::size_t> bin_counts(const Plane& plane, const HistogramSpec& spec);
std::vector<std::size_t> bin_counts_reference(const Plane& plane, const HistogramSpec& spec);

/// Per-pixel bin index, -1 where out of range.
std::vector<int> bin_map(const Plane& plane, const HistogramSpec& spec);

/// a/b for group g (1-based): bins 2g-1 and 2g in 1-based numbering.
/// Returns +inf when b == 0 < a; throws DegenerateGroup when a == b == 0.
double group_ratio(const Histogram& hist, int g);

}  // namespace histomark
