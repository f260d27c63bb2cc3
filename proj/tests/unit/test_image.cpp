#include <gtest/gtest.h>

#include "histomark/error.hpp"
#include "histomark/image.hpp"

using namespace histomark;

TEST(Plane, StoresRowMajor) {
    Plane p(3, 2, 0.0);
    p.at(2, 1) = 7.5;
    EXPECT_EQ(p.size(), 6u);
    EXPECT_DOUBLE_EQ(p[5], 7.5);
    EXPECT_DOUBLE_EQ(p.row(1)[2], 7.5);
}

TEST(Plane, RejectsBadShapes) {
    EXPECT_THROW(Plane(0, 4), Error);
    EXPECT_THROW(Plane(2, 2, std::vector<double>(3)), Error);
}

TEST(GrayImage, OnlyEightOrSixteenBit) {
    EXPECT_NO_THROW(GrayImage(4, 4, 8));
    EXPECT_NO_THROW(GrayImage(4, 4, 16));
    EXPECT_THROW(GrayImage(4, 4, 12), Error);
    EXPECT_DOUBLE_EQ(GrayImage(1, 1, 16).max_value(), 65535.0);
}

TEST(Quantize, RoundsAndClamps) {
    Plane p(5, 1, std::vector<double>{-3.0, 0.49, 0.5, 254.6, 300.0});
    const GrayImage q = quantize(p, 8);
    EXPECT_DOUBLE_EQ(q.at(0, 0), 0.0);
    EXPECT_DOUBLE_EQ(q.at(1, 0), 0.0);
    EXPECT_DOUBLE_EQ(q.at(2, 0), 1.0);
    EXPECT_DOUBLE_EQ(q.at(3, 0), 255.0);
    EXPECT_DOUBLE_EQ(q.at(4, 0), 255.0);
}

TEST(Bilinear, ExactOnGridAndLinearBetween) {
    Plane p(2, 2, std::vector<double>{0.0, 10.0, 20.0, 30.0});
    EXPECT_DOUBLE_EQ(sample_bilinear(p, 1.0, 1.0), 30.0);
    EXPECT_DOUBLE_EQ(sample_bilinear(p, 0.5, 0.0), 5.0);
    EXPECT_DOUBLE_EQ(sample_bilinear(p, 0.5, 0.5), 15.0);
}

TEST(Bilinear, ClampsOutsideToEdge) {
    Plane p(2, 2, std::vector<double>{0.0, 10.0, 20.0, 30.0});
    EXPECT_DOUBLE_EQ(sample_bilinear(p, -5.0, -5.0), 0.0);
    EXPECT_DOUBLE_EQ(sample_bilinear(p, 9.0, 0.0), 10.0);
    EXPECT_DOUBLE_EQ(sample_bilinear(p, 9.0, 9.0), 30.0);
}

TEST(Luma, Bt601Rounded) {
    EXPECT_EQ(luma_bt601(255, 0, 0), 76);
    EXPECT_EQ(luma_bt601(0, 255, 0), 150);
    EXPECT_EQ(luma_bt601(0, 0, 255), 29);
    EXPECT_EQ(luma_bt601(255, 255, 255), 255);
}

TEST(Mean, MatchesDirectSum) {
    Plane p(3, 3, std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8, 9});
    EXPECT_DOUBLE_EQ(mean_of(p), 5.0);
}
