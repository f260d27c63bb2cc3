#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "histomark/image.hpp"

namespace histomark {

enum class AttackKind { Rotate, Scale, Translate, ShearXY, Crop, GaussianNoise, LuminanceScale, RandomBend };

/// Magnitude units: rotate in degrees, scale as a factor, translate in whole
/// pixels (both axes), shear as the coefficient on both axes, crop as the
/// fraction of area removed, noise as the standard deviation in gray levels,
/// luminance as a factor, bend as the peak displacement in pixels.
struct AttackSpec {
    AttackKind kind = AttackKind::Rotate;
    double magnitude = 0.0;
    std::uint64_t seed = 1;

    bool operator==(const AttackSpec&) const = default;
};

const char* kind_name(AttackKind kind) noexcept;

/// "kind:magnitude[:seed]". Throws BadAttackSpec.
AttackSpec parse_attack_spec(std::string_view text);
std::string to_string(const AttackSpec& spec);

/// Throws BadAttackSpec when the magnitude is outside the kind's range.
void validate(const AttackSpec& spec);

/// Output has the input's dimensions and bit depth. Deterministic for a
/// given (image, spec).
GrayImage apply_attack(const GrayImage& image, const AttackSpec& spec);

/// The 21-entry robustness suite used by the benchmark.
std::vector<AttackSpec> attack_suite_default();

}  // namespace histomark
