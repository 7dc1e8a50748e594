#include "prism/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "prism/errors.hpp"

namespace prism {

namespace {
void check_dims(int height, int width) {
    if (height < 1 || width < 1) {
        throw DimensionError("image dimensions must be positive, got " +
                             std::to_string(height) + "x" + std::to_string(width));
    }
}
}  // namespace

Grid3::Grid3(int h, int w, double fill)
    : height(h), width(w), values(static_cast<std::size_t>(h) * w * 3, fill) {
    check_dims(h, w);
}

ImageRGB::ImageRGB(int height, int width, double fill) {
    check_dims(height, width);
    if (fill < 0.0 || fill > 1.0) throw FormatError("fill value outside [0,1]");
    grid_ = Grid3(height, width, fill);
}

ImageRGB ImageRGB::from_values(int height, int width, std::vector<double> values) {
    check_dims(height, width);
    if (values.size() != static_cast<std::size_t>(height) * width * 3) {
        throw DimensionError("pixel buffer size does not match dimensions");
    }
    for (double v : values) {
        if (!(v >= 0.0 && v <= 1.0)) throw FormatError("pixel value outside [0,1]");
    }
    ImageRGB img;
    img.grid_.height = height;
    img.grid_.width = width;
    img.grid_.values = std::move(values);
    return img;
}

ImageRGB ImageRGB::from_clipped(const Grid3& raw) {
    check_dims(raw.height, raw.width);
    ImageRGB img;
    img.grid_.height = raw.height;
    img.grid_.width = raw.width;
    img.grid_.values.resize(raw.values.size());
    std::transform(raw.values.begin(), raw.values.end(), img.grid_.values.begin(),
                   [](double v) { return std::clamp(v, 0.0, 1.0); });
    return img;
}

ImageRGB ImageRGB::from_raw_unclipped(Grid3 raw) {
    check_dims(raw.height, raw.width);
    ImageRGB img;
    img.grid_ = std::move(raw);
    return img;
}

ImageRGB ImageRGB::clipped() const {
    return from_clipped(grid_);
}

double ImageRGB::gray(int y, int x) const {
    return (at(y, x, 0) + at(y, x, 1) + at(y, x, 2)) / 3.0;
}

BinaryMask::BinaryMask(int height, int width, std::uint8_t fill)
    : height_(height), width_(width) {
    check_dims(height, width);
    if (fill > 1) throw FormatError("mask values must be 0 or 1");
    values_.assign(static_cast<std::size_t>(height) * width, fill);
}

BinaryMask BinaryMask::from_values(int height, int width, std::vector<std::uint8_t> values) {
    check_dims(height, width);
    if (values.size() != static_cast<std::size_t>(height) * width) {
        throw DimensionError("mask buffer size does not match dimensions");
    }
    for (auto v : values) {
        if (v > 1) throw FormatError("mask values must be 0 or 1");
    }
    BinaryMask m;
    m.height_ = height;
    m.width_ = width;
    m.values_ = std::move(values);
    return m;
}

void BinaryMask::set(int y, int x, std::uint8_t v) {
    if (v > 1) throw FormatError("mask values must be 0 or 1");
    values_[static_cast<std::size_t>(y) * width_ + x] = v;
}

std::size_t BinaryMask::foreground_count() const {
    std::size_t n = 0;
    for (auto v : values_) n += v;
    return n;
}

ImageRGB BinaryMask::to_image() const {
    ImageRGB img(height_, width_);
    for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x) {
            const double v = at(y, x) ? 1.0 : 0.0;
            img.at(y, x, 0) = v;
            img.at(y, x, 1) = v;
            img.at(y, x, 2) = v;
        }
    }
    return img;
}

ChannelStats channel_stats(const ImageRGB& image) {
    const std::size_t n = image.pixel_count();
    ChannelStats stats;
    stats.n_pixels = n;
    const auto data = image.data();
    std::array<double, 3> sum{0, 0, 0};
    for (std::size_t i = 0; i < data.size(); i += 3) {
        sum[0] += data[i];
        sum[1] += data[i + 1];
        sum[2] += data[i + 2];
    }
    for (int c = 0; c < 3; ++c) stats.mu[c] = sum[c] / static_cast<double>(n);
    std::array<double, 3> sq{0, 0, 0};
    for (std::size_t i = 0; i < data.size(); i += 3) {
        for (int c = 0; c < 3; ++c) {
            const double d = data[i + c] - stats.mu[c];
            sq[c] += d * d;
        }
    }
    for (int c = 0; c < 3; ++c) stats.sigma[c] = std::sqrt(sq[c] / static_cast<double>(n));
    return stats;
}

}  // namespace prism
