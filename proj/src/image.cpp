#include "histomark/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "histomark/error.hpp"

namespace histomark {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Io: return "io";
        case ErrorCode::Format: return "format";
        case ErrorCode::InvalidArgument: return "invalid_argument";
        case ErrorCode::Capacity: return "capacity";
        case ErrorCode::DegenerateGroup: return "degenerate_group";
        case ErrorCode::SelfCheck: return "self_check";
        case ErrorCode::SidecarVersion: return "sidecar_version";
        case ErrorCode::BadAttackSpec: return "bad_attack_spec";
    }
    return "unknown";
}

namespace {

void check_dims(int width, int height) {
    if (width <= 0 || height <= 0)
        throw Error(ErrorCode::InvalidArgument,
                    "plane dimensions must be positive, got " + std::to_string(width) + "x" + std::to_string(height));
}

void check_depth(int bit_depth) {
    if (bit_depth != 8 && bit_depth != 16)
        throw Error(ErrorCode::InvalidArgument, "bit depth must be 8 or 16, got " + std::to_string(bit_depth));
}

}  // namespace

Plane::Plane(int width, int height, double fill) : width_(width), height_(height) {
    check_dims(width, height);
    values_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

Plane::Plane(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
    check_dims(width, height);
    if (values_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw Error(ErrorCode::InvalidArgument, "plane value count does not match dimensions");
}

GrayImage::GrayImage(int width, int height, int bit_depth, double fill)
    : bit_depth_(bit_depth), plane_(width, height, fill) {
    check_depth(bit_depth);
}

GrayImage::GrayImage(Plane plane, int bit_depth) : bit_depth_(bit_depth), plane_(std::move(plane)) {
    check_depth(bit_depth);
}

bool GrayImage::operator==(const GrayImage& other) const {
    if (bit_depth_ != other.bit_depth_ || !plane_.same_shape(other.plane_)) return false;
    return std::equal(plane_.values().begin(), plane_.values().end(), other.plane_.values().begin());
}

GrayImage quantize(const Plane& plane, int bit_depth) {
    GrayImage out(plane.width(), plane.height(), bit_depth);
    const double hi = out.max_value();
    auto src = plane.values();
    auto dst = out.plane().values();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = std::clamp(std::round(src[i]), 0.0, hi);
    return out;
}

double sample_bilinear(const Plane& plane, double x, double y) noexcept {
    const int w = plane.width();
    const int h = plane.height();
    x = std::clamp(x, 0.0, static_cast<double>(w - 1));
    y = std::clamp(y, 0.0, static_cast<double>(h - 1));
    const int x0 = std::min(static_cast<int>(x), w - 1);
    const int y0 = std::min(static_cast<int>(y), h - 1);
    const int x1 = std::min(x0 + 1, w - 1);
    const int y1 = std::min(y0 + 1, h - 1);
    const double fx = x - x0;
    const double fy = y - y0;
    const double top = plane.at(x0, y0) + fx * (plane.at(x1, y0) - plane.at(x0, y0));
    const double bot = plane.at(x0, y1) + fx * (plane.at(x1, y1) - plane.at(x0, y1));
    return top + fy * (bot - top);
}

int luma_bt601(int r, int g, int b) noexcept {
    return static_cast<int>(std::lround(0.299 * r + 0.587 * g + 0.114 * b));
}

double mean_of(const Plane& plane) {
    // Row sums first, then a serial combine: the result does not depend on
    // how rows are split across threads.
    const int h = plane.height();
    const int w = plane.width();
    std::vector<long double> rows(static_cast<std::size_t>(h));
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        long double s = 0.0L;
        const double* r = plane.row(y);
        for (int x = 0; x < w; ++x) s += r[x];
        rows[static_cast<std::size_t>(y)] = s;
    }
    long double total = 0.0L;
    for (long double s : rows) total += s;
    return static_cast<double>(total / static_cast<long double>(plane.size()));
}

}  // namespace histomark
