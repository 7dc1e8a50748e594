#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <span>
#include <vector>

namespace prism {

// Unclipped H x W x 3 double buffer, row-major, channel-interleaved (R,G,B).
// Carrier for noise fields and pre-clip arithmetic; no range guarantee.
struct Grid3 {
    int height = 0;
    int width = 0;
    std::vector<double> values;  // size = height * width * 3

    Grid3() = default;
    Grid3(int h, int w, double fill = 0.0);

    double& at(int y, int x, int c) { return values[(static_cast<std::size_t>(y) * width + x) * 3 + c]; }
    double at(int y, int x, int c) const { return values[(static_cast<std::size_t>(y) * width + x) * 3 + c]; }
    std::size_t size() const { return values.size(); }
};

// RGB image with every value in [0, 1]. Checked constructors enforce the
// range; from_raw_unclipped is the one escape hatch for analysis math that
// deliberately feeds out-of-range signals into a linear codec.
class ImageRGB {
public:
    ImageRGB() = default;
    ImageRGB(int height, int width, double fill = 0.0);

    // throws FormatError if any value falls outside [0, 1]
    static ImageRGB from_values(int height, int width, std::vector<double> values);
    // clamps into [0, 1]
    static ImageRGB from_clipped(const Grid3& raw);
    // no validation, no clamping; values may leave [0, 1]
    static ImageRGB from_raw_unclipped(Grid3 raw);

    int height() const { return grid_.height; }
    int width() const { return grid_.width; }
    std::size_t pixel_count() const { return static_cast<std::size_t>(grid_.height) * grid_.width; }

    double& at(int y, int x, int c) { return grid_.at(y, x, c); }
    double at(int y, int x, int c) const { return grid_.at(y, x, c); }

    std::span<const double> data() const { return grid_.values; }
    std::span<double> data() { return grid_.values; }
    const Grid3& grid() const { return grid_; }

    ImageRGB clipped() const;
    // grayscale value at (y, x): mean of the three channels
    double gray(int y, int x) const;

    bool same_shape(const ImageRGB& other) const {
        return height() == other.height() && width() == other.width();
    }

private:
    Grid3 grid_;
};

// H x W mask whose entries are exactly 0 or 1.
class BinaryMask {
public:
    BinaryMask() = default;
    BinaryMask(int height, int width, std::uint8_t fill = 0);

    static BinaryMask from_values(int height, int width, std::vector<std::uint8_t> values);

    int height() const { return height_; }
    int width() const { return width_; }

    std::uint8_t at(int y, int x) const { return values_[static_cast<std::size_t>(y) * width_ + x]; }
    void set(int y, int x, std::uint8_t v);

    std::span<const std::uint8_t> data() const { return values_; }
    std::size_t foreground_count() const;

    // 0 -> black, 1 -> white rendering
    ImageRGB to_image() const;

private:
    int height_ = 0;
    int width_ = 0;
    std::vector<std::uint8_t> values_;
};

// Per-channel mean and population standard deviation of a reference image.
struct ChannelStats {
    std::array<double, 3> mu{0.0, 0.0, 0.0};
    std::array<double, 3> sigma{0.0, 0.0, 0.0};
    std::size_t n_pixels = 0;
};

// mu[c]    = (1/N) sum I_c(x,y)
// sigma[c] = sqrt((1/N) sum (I_c(x,y) - mu[c])^2), population normalization
ChannelStats channel_stats(const ImageRGB& image);

}  // namespace prism
