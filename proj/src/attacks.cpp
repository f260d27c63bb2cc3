#include "histomark/attacks.hpp"

#include <algorithm>
#include <array>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <random>

#include "histomark/error.hpp"

namespace histomark {

namespace {

struct KindInfo {
    AttackKind kind;
    const char* name;
    double min, max;
};

constexpr std::array<KindInfo, 8> kKinds{{
    {AttackKind::Rotate, "rotate", -180.0, 180.0},
    {AttackKind::Scale, "scale", 0.25, 4.0},
    {AttackKind::Translate, "translate", -1024.0, 1024.0},
    {AttackKind::ShearXY, "shear_xy", -0.5, 0.5},
    {AttackKind::Crop, "crop", 0.0, 0.5},
    {AttackKind::GaussianNoise, "gaussian_noise", 0.0, 64.0},
    {AttackKind::LuminanceScale, "luminance_scale", 0.05, 4.0},
    {AttackKind::RandomBend, "random_bend", 0.0, 32.0},
}};

const KindInfo& info(AttackKind k) {
    for (const auto& i : kKinds)
        if (i.kind == k) return i;
    throw Error(ErrorCode::BadAttackSpec, "unknown attack kind");
}

std::string shortest(double v) {
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

// Uniform in [0, 1) from the top 53 bits; the engine output is fully
// specified by the standard, unlike the library distributions.
double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double normal(std::mt19937_64& rng) {
    double u1;
    do u1 = uniform(rng);
    while (u1 <= 0.0);
    const double u2 = uniform(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

template <class Map>
GrayImage remap(const GrayImage& img, Map&& source_of) {
    const int w = img.width();
    const int h = img.height();
    Plane out(w, h);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const auto [sx, sy] = source_of(static_cast<double>(x), static_cast<double>(y));
            out.at(x, y) = sample_bilinear(img.plane(), sx, sy);
        }
    return quantize(out, img.bit_depth());
}

GrayImage pointwise(const GrayImage& img, auto&& f) {
    Plane out = img.plane();
    for (double& v : out.values()) v = f(v);
    return quantize(out, img.bit_depth());
}

GrayImage rotate(const GrayImage& img, double degrees) {
    const double t = degrees * std::numbers::pi / 180.0;
    const double c = std::cos(t), s = std::sin(t);
    const double cx = (img.width() - 1) / 2.0, cy = (img.height() - 1) / 2.0;
    return remap(img, [&](double x, double y) {
        const double u = x - cx, v = y - cy;
        return std::pair{c * u + s * v + cx, -s * u + c * v + cy};
    });
}

GrayImage scale(const GrayImage& img, double s) {
    const int w = img.width(), h = img.height();
    const int sw = std::max(1, static_cast<int>(std::lround(s * w)));
    const int sh = std::max(1, static_cast<int>(std::lround(s * h)));
    // Offsets of the original canvas inside the resized one; negative means
    // the resized image is smaller and gets edge padding.
    const int ox = (sw - w) >= 0 ? (sw - w) / 2 : -((w - sw + 1) / 2);
    const int oy = (sh - h) >= 0 ? (sh - h) / 2 : -((h - sh + 1) / 2);
    const double fx = static_cast<double>(w) / sw, fy = static_cast<double>(h) / sh;
    return remap(img, [&](double x, double y) {
        const double rx = std::clamp(x + ox, 0.0, static_cast<double>(sw - 1));
        const double ry = std::clamp(y + oy, 0.0, static_cast<double>(sh - 1));
        return std::pair{(rx + 0.5) * fx - 0.5, (ry + 0.5) * fy - 0.5};
    });
}

GrayImage translate(const GrayImage& img, int t) {
    return remap(img, [&](double x, double y) { return std::pair{x - t, y - t}; });
}

GrayImage shear(const GrayImage& img, double k) {
    // Forward map [x', y'] = [[1, k], [k, 1]] [x, y] about the centre.
    const double det = 1.0 - k * k;
    const double cx = (img.width() - 1) / 2.0, cy = (img.height() - 1) / 2.0;
    return remap(img, [&](double x, double y) {
        const double u = x - cx, v = y - cy;
        return std::pair{(u - k * v) / det + cx, (v - k * u) / det + cy};
    });
}

GrayImage crop(const GrayImage& img, double fraction) {
    const int w = img.width(), h = img.height();
    const double keep = std::sqrt(1.0 - fraction);
    const int bx = std::min(static_cast<int>(std::lround(w * (1.0 - keep) / 2.0)), (w - 1) / 2);
    const int by = std::min(static_cast<int>(std::lround(h * (1.0 - keep) / 2.0)), (h - 1) / 2);
    Plane out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            out.at(x, y) = img.at(std::clamp(x, bx, w - 1 - bx), std::clamp(y, by, h - 1 - by));
    return quantize(out, img.bit_depth());
}

GrayImage noise(const GrayImage& img, double sd, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Plane out = img.plane();
    for (double& v : out.values()) v += sd * normal(rng);
    return quantize(out, img.bit_depth());
}

GrayImage bend(const GrayImage& img, double peak, std::uint64_t seed) {
    const int w = img.width(), h = img.height();
    constexpr int kTerms = 4;
    struct Term {
        double fx, fy, phase, amp;
    };
    std::mt19937_64 rng(seed);
    auto draw = [&] {
        std::array<Term, kTerms> t{};
        for (auto& term : t) {
            do {
                term.fx = std::floor(uniform(rng) * 4.0);
                term.fy = std::floor(uniform(rng) * 4.0);
            } while (term.fx == 0.0 && term.fy == 0.0);
            term.phase = 2.0 * std::numbers::pi * uniform(rng);
            term.amp = 0.5 + uniform(rng);
        }
        return t;
    };
    const auto tx = draw();
    const auto ty = draw();
    auto field = [&](const std::array<Term, kTerms>& t, double x, double y) {
        double s = 0.0;
        for (const auto& term : t)
            s += term.amp * std::sin(2.0 * std::numbers::pi * (term.fx * x / w + term.fy * y / h) + term.phase);
        return s;
    };
    double mx = 0.0, my = 0.0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            mx = std::max(mx, std::abs(field(tx, x, y)));
            my = std::max(my, std::abs(field(ty, x, y)));
        }
    const double kx = mx > 0.0 ? peak / mx : 0.0;
    const double ky = my > 0.0 ? peak / my : 0.0;
    return remap(img, [&](double x, double y) {
        return std::pair{x + kx * field(tx, x, y), y + ky * field(ty, x, y)};
    });
}

}  // namespace

const char* kind_name(AttackKind kind) noexcept {
    for (const auto& i : kKinds)
        if (i.kind == kind) return i.name;
    return "unknown";
}

void validate(const AttackSpec& spec) {
    const KindInfo& k = info(spec.kind);
    if (!std::isfinite(spec.magnitude) || spec.magnitude < k.min || spec.magnitude > k.max)
        throw Error(ErrorCode::BadAttackSpec, std::string(k.name) + " magnitude " + shortest(spec.magnitude) +
                                                  " outside [" + shortest(k.min) + ", " + shortest(k.max) + "]");
    if (spec.kind == AttackKind::Translate && spec.magnitude != std::floor(spec.magnitude))
        throw Error(ErrorCode::BadAttackSpec, "translate magnitude must be a whole number of pixels");
}

AttackSpec parse_attack_spec(std::string_view text) {
    const auto c1 = text.find(':');
    if (c1 == std::string_view::npos)
        throw Error(ErrorCode::BadAttackSpec, "attack spec '" + std::string(text) + "' is not kind:magnitude[:seed]");
    const std::string name(text.substr(0, c1));
    const auto rest = text.substr(c1 + 1);
    const auto c2 = rest.find(':');
    const std::string mag(rest.substr(0, c2));

    AttackSpec spec;
    bool found = false;
    for (const auto& i : kKinds)
        if (name == i.name) {
            spec.kind = i.kind;
            found = true;
        }
    if (!found) throw Error(ErrorCode::BadAttackSpec, "unknown attack kind '" + name + "'");

    char* end = nullptr;
    errno = 0;
    spec.magnitude = std::strtod(mag.c_str(), &end);
    if (mag.empty() || *end != '\0' || errno == ERANGE)
        throw Error(ErrorCode::BadAttackSpec, "attack magnitude '" + mag + "' is not a number");
    if (c2 != std::string_view::npos) {
        const std::string seed(rest.substr(c2 + 1));
        errno = 0;
        spec.seed = std::strtoull(seed.c_str(), &end, 10);
        if (seed.empty() || seed[0] == '-' || *end != '\0' || errno == ERANGE)
            throw Error(ErrorCode::BadAttackSpec, "attack seed '" + seed + "' is not an unsigned integer");
    }
    validate(spec);
    return spec;
}

std::string to_string(const AttackSpec& spec) {
    return std::string(kind_name(spec.kind)) + ":" + shortest(spec.magnitude) + ":" + std::to_string(spec.seed);
}

GrayImage apply_attack(const GrayImage& image, const AttackSpec& spec) {
    validate(spec);
    const double m = spec.magnitude;
    switch (spec.kind) {
        case AttackKind::Rotate: return rotate(image, m);
        case AttackKind::Scale: return scale(image, m);
        case AttackKind::Translate: return translate(image, static_cast<int>(m));
        case AttackKind::ShearXY: return shear(image, m);
        case AttackKind::Crop: return crop(image, m);
        case AttackKind::GaussianNoise: return noise(image, m, spec.seed);
        case AttackKind::LuminanceScale: return pointwise(image, [m](double v) { return v * m; });
        case AttackKind::RandomBend: return bend(image, m, spec.seed);
    }
    throw Error(ErrorCode::BadAttackSpec, "unknown attack kind");
}

std::vector<AttackSpec> attack_suite_default() {
    using K = AttackKind;
    std::vector<AttackSpec> s;
    for (double m : {1.0, 5.0, 10.0}) s.push_back({K::Rotate, m});
    for (double m : {0.8, 0.9, 1.1, 1.25}) s.push_back({K::Scale, m});
    for (double m : {5.0, 10.0}) s.push_back({K::Translate, m});
    for (double m : {0.05, 0.1}) s.push_back({K::ShearXY, m});
    for (double m : {0.05, 0.1, 0.2}) s.push_back({K::Crop, m});
    for (double m : {2.0, 5.0, 10.0}) s.push_back({K::GaussianNoise, m});
    for (double m : {0.9, 1.1}) s.push_back({K::LuminanceScale, m});
    for (double m : {1.0, 2.0}) s.push_back({K::RandomBend, m});
    return s;
}

}  // namespace histomark
