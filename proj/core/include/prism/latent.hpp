#pragma once

#include <cstddef>
#include <vector>

namespace prism {

// C x h x w tensor of doubles, channel-major.
struct LatentTensor {
    int channels = 0;
    int height = 0;
    int width = 0;
    std::vector<double> values;

    LatentTensor() = default;
    LatentTensor(int c, int h, int w, double fill = 0.0);

    double& at(int c, int y, int x) {
        return values[(static_cast<std::size_t>(c) * height + y) * width + x];
    }
    double at(int c, int y, int x) const {
        return values[(static_cast<std::size_t>(c) * height + y) * width + x];
    }

    std::size_t size() const { return values.size(); }
    bool same_shape(const LatentTensor& other) const {
        return channels == other.channels && height == other.height && width == other.width;
    }
    bool all_finite() const;

    double l2_norm() const;
    double max_abs() const;
};

// elementwise helpers; throw DimensionError on shape mismatch
LatentTensor add(const LatentTensor& a, const LatentTensor& b);
LatentTensor sub(const LatentTensor& a, const LatentTensor& b);
LatentTensor scale(const LatentTensor& a, double k);
// a + k * b
LatentTensor axpy(const LatentTensor& a, double k, const LatentTensor& b);
double max_abs_diff(const LatentTensor& a, const LatentTensor& b);

}  // namespace prism
