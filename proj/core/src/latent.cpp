#include "prism/latent.hpp"

#include <cmath>

#include "prism/errors.hpp"

namespace prism {

LatentTensor::LatentTensor(int c, int h, int w, double fill)
    : channels(c), height(h), width(w) {
    if (c < 1 || h < 1 || w < 1) throw DimensionError("latent dimensions must be positive");
    values.assign(static_cast<std::size_t>(c) * h * w, fill);
}

bool LatentTensor::all_finite() const {
    for (double v : values) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

double LatentTensor::l2_norm() const {
    double s = 0.0;
    for (double v : values) s += v * v;
    return std::sqrt(s);
}

double LatentTensor::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

namespace {
void check_same_shape(const LatentTensor& a, const LatentTensor& b) {
    if (!a.same_shape(b)) throw DimensionError("latent tensor shapes do not match");
}
}  // namespace

LatentTensor add(const LatentTensor& a, const LatentTensor& b) {
    check_same_shape(a, b);
    LatentTensor out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
    return out;
}

LatentTensor sub(const LatentTensor& a, const LatentTensor& b) {
    check_same_shape(a, b);
    LatentTensor out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
    return out;
}

LatentTensor scale(const LatentTensor& a, double k) {
    LatentTensor out = a;
    for (double& v : out.values) v *= k;
    return out;
}

LatentTensor axpy(const LatentTensor& a, double k, const LatentTensor& b) {
    check_same_shape(a, b);
    LatentTensor out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += k * b.values[i];
    return out;
}

double max_abs_diff(const LatentTensor& a, const LatentTensor& b) {
    check_same_shape(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        m = std::max(m, std::abs(a.values[i] - b.values[i]));
    }
    return m;
}

}  // namespace prism
