#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace histomark {

/// Real-valued, unclamped row-major grid. Used for filtered planes and
/// pixel deltas; no range or integrality is implied.
class Plane {
public:
    Plane() = default;
    Plane(int width, int height, double fill = 0.0);
    Plane(int width, int height, std::vector<double> values);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    bool same_shape(const Plane& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }

    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }
    double& at(int x, int y) noexcept { return values_[index(x, y)]; }
    double at(int x, int y) const noexcept { return values_[index(x, y)]; }
    double& operator[](std::size_t i) noexcept { return values_[i]; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }

    double* row(int y) noexcept { return values_.data() + index(0, y); }
    const double* row(int y) const noexcept { return values_.data() + index(0, y); }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> values_;
};

/// Grayscale raster with integer intensities in [0, 2^bit_depth - 1].
/// Pixels are stored as doubles so the codec can work on them directly.
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(int width, int height, int bit_depth = 8, double fill = 0.0);
    /// Takes ownership of `plane`; values must already be quantized.
    explicit GrayImage(Plane plane, int bit_depth = 8);

    int width() const noexcept { return plane_.width(); }
    int height() const noexcept { return plane_.height(); }
    int bit_depth() const noexcept { return bit_depth_; }
    double max_value() const noexcept { return static_cast<double>((1u << bit_depth_) - 1u); }
    std::size_t size() const noexcept { return plane_.size(); }

    double at(int x, int y) const noexcept { return plane_.at(x, y); }
    void set(int x, int y, double v) noexcept { plane_.at(x, y) = v; }

    const Plane& plane() const noexcept { return plane_; }
    Plane& plane() noexcept { return plane_; }

    bool operator==(const GrayImage& other) const;

private:
    int bit_depth_ = 8;
    Plane plane_;
};

/// Rounds half away from zero and clamps to the range of `bit_depth`.
GrayImage quantize(const Plane& plane, int bit_depth = 8);

/// Bilinear interpolation at real coordinates; samples outside the grid
/// take the value of the nearest edge pixel.
double sample_bilinear(const Plane& plane, double x, double y) noexcept;

/// ITU-R BT.601 luma rounded to the nearest integer.
int luma_bt601(int r, int g, int b) noexcept;

double mean_of(const Plane& plane);

}  // namespace histomark
