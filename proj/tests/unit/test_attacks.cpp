#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "corpus.hpp"
#include "histomark/attacks.hpp"
#include "histomark/error.hpp"

using namespace histomark;

namespace {

ErrorCode parse_code(const std::string& s) {
    try {
        parse_attack_spec(s);
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Io;
}

}  // namespace

TEST(AttackSpec, ParseAndFormat) {
    const AttackSpec a = parse_attack_spec("rotate:5");
    EXPECT_EQ(a.kind, AttackKind::Rotate);
    EXPECT_EQ(a.magnitude, 5.0);
    EXPECT_EQ(a.seed, 1u);
    EXPECT_EQ(to_string(a), "rotate:5:1");
    const AttackSpec b = parse_attack_spec("gaussian_noise:2.5:42");
    EXPECT_EQ(b.seed, 42u);
    EXPECT_EQ(to_string(b), "gaussian_noise:2.5:42");
    EXPECT_EQ(to_string({AttackKind::ShearXY, 0.1, 3}), "shear_xy:0.1:3");
    for (const auto& s : attack_suite_default()) EXPECT_EQ(parse_attack_spec(to_string(s)), s);
}

TEST(AttackSpec, Rejects) {
    for (const char* s : {"rotate", "spin:5", "rotate:abc", "rotate:", "rotate:5:-1", "rotate:5:x", "rotate:181",
                          "scale:0.1", "scale:5", "translate:2.5", "translate:2000", "shear_xy:0.6", "crop:0.6",
                          "crop:-0.1", "gaussian_noise:-1", "luminance_scale:0", "random_bend:40", "rotate:nan"})
        EXPECT_EQ(parse_code(s), ErrorCode::BadAttackSpec) << s;
}

TEST(AttackSuite, TwentyOneDistinctEntries) {
    const auto suite = attack_suite_default();
    ASSERT_EQ(suite.size(), 21u);
    std::set<std::string> names;
    for (const auto& s : suite) {
        EXPECT_NO_THROW(validate(s));
        names.insert(to_string(s));
    }
    EXPECT_EQ(names.size(), 21u);
}

TEST(Attacks, IdentityMagnitudesLeaveImageUnchanged) {
    const GrayImage img = testsupport::synthetic_scene(64, 48, 1);
    const AttackSpec ids[] = {{AttackKind::Rotate, 0.0},         {AttackKind::Scale, 1.0},
                              {AttackKind::Translate, 0.0},      {AttackKind::ShearXY, 0.0},
                              {AttackKind::Crop, 0.0},           {AttackKind::GaussianNoise, 0.0},
                              {AttackKind::LuminanceScale, 1.0}, {AttackKind::RandomBend, 0.0}};
    for (const auto& s : ids) EXPECT_TRUE(apply_attack(img, s) == img) << to_string(s);
}

TEST(Attacks, PreserveShapeAndDepth) {
    const GrayImage img = testsupport::synthetic_scene(70, 50, 2);
    for (const auto& s : attack_suite_default()) {
        const GrayImage out = apply_attack(img, s);
        EXPECT_EQ(out.width(), 70) << to_string(s);
        EXPECT_EQ(out.height(), 50) << to_string(s);
        EXPECT_EQ(out.bit_depth(), 8) << to_string(s);
    }
    GrayImage deep(32, 32, 16, 40000.0);
    EXPECT_EQ(apply_attack(deep, {AttackKind::Rotate, 10.0}).bit_depth(), 16);
}

TEST(Attacks, DeterministicPerSeed) {
    const GrayImage img = testsupport::synthetic_scene(64, 64, 3);
    for (const auto& s : attack_suite_default()) EXPECT_TRUE(apply_attack(img, s) == apply_attack(img, s));
    EXPECT_FALSE(apply_attack(img, {AttackKind::GaussianNoise, 5.0, 1}) ==
                 apply_attack(img, {AttackKind::GaussianNoise, 5.0, 2}));
    EXPECT_FALSE(apply_attack(img, {AttackKind::RandomBend, 2.0, 1}) ==
                 apply_attack(img, {AttackKind::RandomBend, 2.0, 2}));
}

TEST(Attacks, TranslateShiftsContent) {
    const GrayImage img = testsupport::random_image(40, 30, 4);
    const GrayImage out = apply_attack(img, {AttackKind::Translate, 5.0});
    for (int y = 5; y < 30; ++y)
        for (int x = 5; x < 40; ++x) ASSERT_EQ(out.at(x, y), img.at(x - 5, y - 5));
    EXPECT_EQ(out.at(0, 0), img.at(0, 0));
    const GrayImage back = apply_attack(img, {AttackKind::Translate, -3.0});
    EXPECT_EQ(back.at(0, 0), img.at(3, 3));
}

TEST(Attacks, QuarterTurnPermutesPixels) {
    const GrayImage img = testsupport::random_image(31, 31, 5);
    const GrayImage out = apply_attack(img, {AttackKind::Rotate, 90.0});
    for (int y = 0; y < 31; ++y)
        for (int x = 0; x < 31; ++x) ASSERT_EQ(out.at(x, y), img.at(y, 30 - x));
}

TEST(Attacks, LuminanceScalesAndClips) {
    const GrayImage img = testsupport::random_image(32, 32, 6);
    const GrayImage out = apply_attack(img, {AttackKind::LuminanceScale, 1.5});
    for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 32; ++x)
            ASSERT_EQ(out.at(x, y), std::min(255.0, std::floor(img.at(x, y) * 1.5 + 0.5)));
}

TEST(Attacks, LuminanceOnConstantImage) {
    const GrayImage out = apply_attack(GrayImage(16, 16, 8, 100.0), {AttackKind::LuminanceScale, 1.1});
    EXPECT_TRUE(out == GrayImage(16, 16, 8, 110.0));
}

TEST(Attacks, NoiseHasRequestedSpread) {
    const GrayImage img(256, 256, 8, 128.0);
    const GrayImage out = apply_attack(img, {AttackKind::GaussianNoise, 5.0, 9});
    double s = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double d = out.plane()[i] - 128.0;
        s += d;
        s2 += d * d;
    }
    const double n = static_cast<double>(out.size());
    EXPECT_NEAR(s / n, 0.0, 0.1);
    // rounding adds 1/12 to the variance
    EXPECT_NEAR(std::sqrt(s2 / n - (s / n) * (s / n)), std::sqrt(25.0 + 1.0 / 12.0), 0.1);
}

TEST(Attacks, CropReplicatesBorder) {
    const GrayImage img = testsupport::random_image(100, 100, 7);
    const GrayImage out = apply_attack(img, {AttackKind::Crop, 0.19});  // keeps 90% per side
    EXPECT_EQ(out.at(50, 50), img.at(50, 50));
    EXPECT_EQ(out.at(0, 0), img.at(5, 5));
    EXPECT_EQ(out.at(99, 0), img.at(94, 5));
}

TEST(Attacks, BendDisplacementBounded) {
    // A horizontal ramp maps displacement to intensity change directly.
    GrayImage ramp(128, 128);
    for (int y = 0; y < 128; ++y)
        for (int x = 0; x < 128; ++x) ramp.set(x, y, 60.0 + x);
    const GrayImage out = apply_attack(ramp, {AttackKind::RandomBend, 3.0, 4});
    double mx = 0.0;
    for (int y = 0; y < 128; ++y)
        for (int x = 4; x < 124; ++x) mx = std::max(mx, std::abs(out.at(x, y) - ramp.at(x, y)));
    EXPECT_LE(mx, 3.5);
    EXPECT_GE(mx, 1.0);
}
