#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "prism/image.hpp"

namespace prism {

// Gaussian fit of a feature distribution: sample mean and (n-1)-normalized
// covariance, stored row-major. cov stays symmetric to 1e-9 by construction.
struct GaussianStats {
    std::vector<double> mean;
    std::vector<double> cov;  // dim x dim, row-major
    std::size_t dim = 0;
    std::size_t n_samples = 0;
};

// Requires >= 2 samples of equal dimension; throws DataError otherwise.
GaussianStats gaussian_stats(const std::vector<std::vector<double>>& features);

// ||mu_a - mu_b||^2 + Tr(Sa + Sb - 2 (Sa Sb)^{1/2}); the matrix square root
// is taken through the eigendecomposition of sqrt(Sa) Sb sqrt(Sa), with tiny
// negative eigenvalues clamped to zero.
double frechet_distance(const GaussianStats& a, const GaussianStats& b);

// fid_value / normalizer; the normalizer is always an explicit input.
double nfid(double fid_value, double normalizer);

struct SsimParams {
    int window = 11;
    double window_sigma = 1.5;
    double k1 = 0.01;
    double k2 = 0.03;
    double dynamic_range = 1.0;
};

// Windowed structural similarity over an 11x11 Gaussian window (sigma 1.5),
// averaged over all fully-interior window positions. Images smaller than the
// window fall back to one global window.
double ssim(const ImageRGB& a, const ImageRGB& b, const SsimParams& params = {});
// Single-plane variant; the RGB overload averages this across channels.
double ssim_plane(const std::vector<double>& a, const std::vector<double>& b, int height,
                  int width, const SsimParams& params = {});
double ssim(const BinaryMask& a, const BinaryMask& b, const SsimParams& params = {});

// Shannon entropy in bits of the grayscale histogram over [0, 1].
double shannon_entropy(const ImageRGB& image, int bins = 256);
// Histogram entropy of an arbitrary value buffer, binned over its own
// [min, max] range; degenerate (constant) buffers carry 0 bits.
double shannon_entropy_values(const std::vector<double>& values, int bins = 256);

// 100 * max(0, cosine(image_vec, text_vec)); throws DataError on zero norms.
double clip_score(const std::vector<double>& image_vec, const std::vector<double>& text_vec);

// Mean pairwise euclidean distance between feature vectors; the desk-scale
// diversity proxy used by sweeps and ablations.
double mean_pairwise_distance(const std::vector<std::vector<double>>& features);

// A metric value never travels without the sample count it came from.
struct MetricValue {
    double value = 0.0;
    std::size_t n_samples = 0;
};

struct MetricReport {
    std::optional<MetricValue> fid;
    std::optional<MetricValue> nfid;
    std::optional<MetricValue> ssim;
    std::optional<MetricValue> clip_score;
    std::optional<MetricValue> entropy_bits;
    std::optional<MetricValue> diversity;
    std::string params;  // evaluation configuration echo
};

}  // namespace prism
