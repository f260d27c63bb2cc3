#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "corpus.hpp"
#include "histomark/error.hpp"
#include "histomark/histogram.hpp"
#include "oracles.hpp"

using namespace histomark;

TEST(HistogramSpec, ConstantPlaneExample) {
    const Plane p(16, 16, 100.0);
    const Histogram h = build_histogram(p, 0.6, 2.0);
    EXPECT_DOUBLE_EQ(h.spec.mean, 100.0);
    EXPECT_DOUBLE_EQ(h.spec.lo, 40.0);
    EXPECT_DOUBLE_EQ(h.spec.hi(), 160.0);
    ASSERT_EQ(h.spec.bin_count, 60);
    // Bin 31 counting from one covers [100, 102).
    EXPECT_EQ(h.counts[30], 256u);
    EXPECT_DOUBLE_EQ(h.spec.bin_lo(30), 100.0);
    EXPECT_EQ(h.out_of_range, 0u);
    EXPECT_EQ(h.members[30].size(), 256u);
}

TEST(HistogramSpec, TwoValueExample) {
    Plane p(20, 1);
    for (int x = 0; x < 20; ++x) p.at(x, 0) = x < 10 ? 90.0 : 110.0;
    const Histogram h = build_histogram(p, 0.5, 2.0);
    EXPECT_DOUBLE_EQ(h.spec.lo, 50.0);
    EXPECT_DOUBLE_EQ(h.spec.hi(), 150.0);
    EXPECT_EQ(h.counts[20], 10u);  // 1-based bin 21
    EXPECT_EQ(h.counts[30], 10u);  // 1-based bin 31
}

TEST(HistogramSpec, BinsAreHalfOpen) {
    const auto s = HistogramSpec::from_mean(100.0, 0.6, 2.0);
    EXPECT_EQ(s.bin_of(40.0), 0);
    EXPECT_EQ(s.bin_of(41.999999), 0);
    EXPECT_EQ(s.bin_of(42.0), 1);
    EXPECT_EQ(s.bin_of(159.9999), 59);
    EXPECT_EQ(s.bin_of(160.0), -1);
    EXPECT_EQ(s.bin_of(39.9999), -1);
    EXPECT_EQ(s.bin_of(std::numeric_limits<double>::quiet_NaN()), -1);
}

TEST(HistogramSpec, ValidatesArguments) {
    EXPECT_THROW(HistogramSpec::from_mean(100.0, 0.0, 2.0), Error);
    EXPECT_THROW(HistogramSpec::from_mean(100.0, 1.0, 2.0), Error);
    EXPECT_THROW(HistogramSpec::from_mean(100.0, 0.6, 0.0), Error);
    EXPECT_EQ(HistogramSpec::from_mean(0.0, 0.6, 2.0).bin_count, 0);
}

TEST(HistogramSpec, RescaleIsValueCovariant) {
    const auto s = HistogramSpec::from_mean(120.0, 0.6, 2.0);
    const double k = 1.1;
    const auto t = s.rescaled(120.0 * k);
    EXPECT_EQ(t.bin_count, s.bin_count);
    for (double v = s.lo + 0.5; v < s.hi(); v += 1.0) EXPECT_EQ(t.bin_of(v * k), s.bin_of(v)) << v;
}

TEST(Histogram, CountsPartitionThePlane) {
    const Plane p = testsupport::synthetic_scene(64, 64, 1).plane();
    const Histogram h = build_histogram(p, 0.6, 2.0);
    EXPECT_EQ(h.total(), p.size());
    for (std::size_t k = 0; k < h.counts.size(); ++k) {
        EXPECT_EQ(h.members[k].size(), h.counts[k]);
        for (auto i : h.members[k]) EXPECT_EQ(h.spec.bin_of(p[i]), static_cast<int>(k));
    }
}

TEST(Histogram, ParallelCountsMatchReference) {
    const Plane p = testsupport::random_image(301, 77, 5).plane();
    const auto s = HistogramSpec::from_mean(compute_mean(p), 0.6, 1.5);
    EXPECT_EQ(bin_counts(p, s), bin_counts_reference(p, s));
    EXPECT_EQ(bin_counts(p, s), build_histogram(p, s).counts);
}

TEST(Histogram, MeanMatchesCompensatedOracle) {
    const Plane p = testsupport::random_image(257, 131, 6).plane();
    EXPECT_NEAR(compute_mean(p), oracle::mean(p), 1e-12);
}

TEST(GroupRatio, OneBasedPairs) {
    Histogram h;
    h.counts = {6, 3, 0, 4, 5, 0, 0, 0};
    EXPECT_DOUBLE_EQ(group_ratio(h, 1), 2.0);
    EXPECT_DOUBLE_EQ(group_ratio(h, 2), 0.0);
    EXPECT_EQ(group_ratio(h, 3), std::numeric_limits<double>::infinity());
    try {
        group_ratio(h, 4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateGroup);
    }
    EXPECT_THROW(group_ratio(h, 5), Error);
    EXPECT_THROW(group_ratio(h, 0), Error);
}

TEST(BinMap, AgreesWithBinOf) {
    const Plane p = testsupport::random_image(20, 20, 12).plane();
    const auto s = HistogramSpec::from_mean(compute_mean(p), 0.4, 3.0);
    const auto m = bin_map(p, s);
    for (std::size_t i = 0; i < p.size(); ++i) EXPECT_EQ(m[i], s.bin_of(p[i]));
}
