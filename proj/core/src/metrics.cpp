#include "prism/metrics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "prism/errors.hpp"

namespace prism {

GaussianStats gaussian_stats(const std::vector<std::vector<double>>& features) {
    if (features.size() < 2) throw DataError("gaussian fit needs at least 2 samples");
    const std::size_t n = features.size();
    const std::size_t d = features[0].size();
    for (const auto& f : features) {
        if (f.size() != d) throw DimensionError("feature vectors have mixed dimensions");
    }

    Eigen::MatrixXd X(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = features[i][j];
    }
    const Eigen::RowVectorXd mean = X.colwise().mean();
    X.rowwise() -= mean;
    Eigen::MatrixXd cov = (X.transpose() * X) / static_cast<double>(n - 1);
    cov = 0.5 * (cov + cov.transpose().eval());

    GaussianStats out;
    out.dim = d;
    out.n_samples = n;
    out.mean.assign(mean.data(), mean.data() + d);
    out.cov.resize(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            out.cov[i * d + j] = cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return out;
}

namespace {

Eigen::MatrixXd to_matrix(const std::vector<double>& flat, std::size_t d) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = flat[i * d + j];
        }
    }
    return m;
}

// PSD square root with eigenvalues clamped at zero.
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    Eigen::VectorXd ev = solver.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = std::sqrt(std::max(0.0, ev(i)));
    return solver.eigenvectors() * ev.asDiagonal() * solver.eigenvectors().transpose();
}

}  // namespace

double frechet_distance(const GaussianStats& a, const GaussianStats& b) {
    if (a.dim != b.dim) throw DimensionError("gaussian stats dimensions do not match");
    const std::size_t d = a.dim;

    Eigen::VectorXd mu_diff(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) mu_diff(static_cast<Eigen::Index>(i)) = a.mean[i] - b.mean[i];

    const Eigen::MatrixXd sa = to_matrix(a.cov, d);
    const Eigen::MatrixXd sb = to_matrix(b.cov, d);

    const Eigen::MatrixXd sqrt_a = psd_sqrt(sa);
    // sqrt(Sa) Sb sqrt(Sa) is symmetric PSD and shares the spectrum of Sa Sb
    Eigen::MatrixXd inner = sqrt_a * sb * sqrt_a;
    inner = 0.5 * (inner + inner.transpose().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(inner);

    double tr_sqrt = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        tr_sqrt += std::sqrt(std::max(0.0, solver.eigenvalues()(i)));
    }

    const double value = mu_diff.squaredNorm() + sa.trace() + sb.trace() - 2.0 * tr_sqrt;
    if (!std::isfinite(value)) throw NumericError("frechet distance evaluated to a non-finite value");
    return std::max(0.0, value);
}

double nfid(double fid_value, double normalizer) {
    if (!(normalizer > 0.0)) throw ConfigError("nfid normalizer must be positive");
    return fid_value / normalizer;
}

namespace {

std::vector<double> gaussian_window(int size, double sigma) {
    std::vector<double> w(static_cast<std::size_t>(size) * size);
    const double half = (size - 1) / 2.0;
    double sum = 0.0;
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            const double dy = y - half;
            const double dx = x - half;
            const double g = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
            w[static_cast<std::size_t>(y) * size + x] = g;
            sum += g;
        }
    }
    for (double& v : w) v /= sum;
    return w;
}

struct WindowMoments {
    double mu_a, mu_b, var_a, var_b, cov;
};

double ssim_from_moments(const WindowMoments& m, const SsimParams& p) {
    const double c1 = (p.k1 * p.dynamic_range) * (p.k1 * p.dynamic_range);
    const double c2 = (p.k2 * p.dynamic_range) * (p.k2 * p.dynamic_range);
    return ((2.0 * m.mu_a * m.mu_b + c1) * (2.0 * m.cov + c2)) /
           ((m.mu_a * m.mu_a + m.mu_b * m.mu_b + c1) * (m.var_a + m.var_b + c2));
}

}  // namespace

double ssim_plane(const std::vector<double>& a, const std::vector<double>& b, int height,
                  int width, const SsimParams& params) {
    if (a.size() != b.size() || a.size() != static_cast<std::size_t>(height) * width) {
        throw DimensionError("ssim inputs must share one H x W shape");
    }

    // whole-plane fallback for inputs smaller than the window
    if (height < params.window || width < params.window) {
        WindowMoments m{0, 0, 0, 0, 0};
        const double n = static_cast<double>(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            m.mu_a += a[i];
            m.mu_b += b[i];
        }
        m.mu_a /= n;
        m.mu_b /= n;
        for (std::size_t i = 0; i < a.size(); ++i) {
            m.var_a += (a[i] - m.mu_a) * (a[i] - m.mu_a);
            m.var_b += (b[i] - m.mu_b) * (b[i] - m.mu_b);
            m.cov += (a[i] - m.mu_a) * (b[i] - m.mu_b);
        }
        m.var_a /= n;
        m.var_b /= n;
        m.cov /= n;
        return ssim_from_moments(m, params);
    }

    const int win = params.window;
    const std::vector<double> w = gaussian_window(win, params.window_sigma);

    double total = 0.0;
    std::size_t count = 0;
    for (int y = 0; y + win <= height; ++y) {
        for (int x = 0; x + win <= width; ++x) {
            WindowMoments m{0, 0, 0, 0, 0};
            // weighted first moments
            for (int wy = 0; wy < win; ++wy) {
                for (int wx = 0; wx < win; ++wx) {
                    const double weight = w[static_cast<std::size_t>(wy) * win + wx];
                    const std::size_t i = static_cast<std::size_t>(y + wy) * width + (x + wx);
                    m.mu_a += weight * a[i];
                    m.mu_b += weight * b[i];
                }
            }
            for (int wy = 0; wy < win; ++wy) {
                for (int wx = 0; wx < win; ++wx) {
                    const double weight = w[static_cast<std::size_t>(wy) * win + wx];
                    const std::size_t i = static_cast<std::size_t>(y + wy) * width + (x + wx);
                    const double da = a[i] - m.mu_a;
                    const double db = b[i] - m.mu_b;
                    m.var_a += weight * da * da;
                    m.var_b += weight * db * db;
                    m.cov += weight * da * db;
                }
            }
            total += ssim_from_moments(m, params);
            ++count;
        }
    }
    return total / static_cast<double>(count);
}

double ssim(const ImageRGB& a, const ImageRGB& b, const SsimParams& params) {
    if (!a.same_shape(b)) throw DimensionError("ssim images must share one shape");
    const int h = a.height();
    const int w = a.width();
    std::vector<double> pa(static_cast<std::size_t>(h) * w);
    std::vector<double> pb(pa.size());
    double total = 0.0;
    for (int c = 0; c < 3; ++c) {
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                pa[static_cast<std::size_t>(y) * w + x] = a.at(y, x, c);
                pb[static_cast<std::size_t>(y) * w + x] = b.at(y, x, c);
            }
        }
        total += ssim_plane(pa, pb, h, w, params);
    }
    return total / 3.0;
}

double ssim(const BinaryMask& a, const BinaryMask& b, const SsimParams& params) {
    if (a.height() != b.height() || a.width() != b.width()) {
        throw DimensionError("ssim masks must share one shape");
    }
    std::vector<double> pa(a.data().size());
    std::vector<double> pb(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i) {
        pa[i] = static_cast<double>(a.data()[i]);
        pb[i] = static_cast<double>(b.data()[i]);
    }
    return ssim_plane(pa, pb, a.height(), a.width(), params);
}

namespace {

double histogram_entropy(const std::vector<std::size_t>& hist, std::size_t total) {
    double bits = 0.0;
    for (std::size_t count : hist) {
        if (count == 0) continue;
        const double p = static_cast<double>(count) / static_cast<double>(total);
        bits -= p * std::log2(p);
    }
    return bits;
}

}  // namespace

double shannon_entropy(const ImageRGB& image, int bins) {
    if (bins < 2) throw ConfigError("entropy needs at least 2 bins");
    std::vector<std::size_t> hist(static_cast<std::size_t>(bins), 0);
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            const double g = std::clamp(image.gray(y, x), 0.0, 1.0);
            const int bin = std::min(bins - 1, static_cast<int>(g * bins));
            ++hist[static_cast<std::size_t>(bin)];
        }
    }
    return histogram_entropy(hist, image.pixel_count());
}

double shannon_entropy_values(const std::vector<double>& values, int bins) {
    if (bins < 2) throw ConfigError("entropy needs at least 2 bins");
    if (values.empty()) return 0.0;
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (hi - lo < 1e-300) return 0.0;
    std::vector<std::size_t> hist(static_cast<std::size_t>(bins), 0);
    for (double v : values) {
        const double u = (v - lo) / (hi - lo);
        const int bin = std::min(bins - 1, static_cast<int>(u * bins));
        ++hist[static_cast<std::size_t>(bin)];
    }
    return histogram_entropy(hist, values.size());
}

double clip_score(const std::vector<double>& image_vec, const std::vector<double>& text_vec) {
    if (image_vec.size() != text_vec.size()) {
        throw DimensionError("embedding dimensions do not match");
    }
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < image_vec.size(); ++i) {
        dot += image_vec[i] * text_vec[i];
        na += image_vec[i] * image_vec[i];
        nb += text_vec[i] * text_vec[i];
    }
    if (na <= 0.0 || nb <= 0.0) throw DataError("clip score requires non-zero vectors");
    const double cosine = dot / (std::sqrt(na) * std::sqrt(nb));
    return 100.0 * std::max(0.0, cosine);
}

double mean_pairwise_distance(const std::vector<std::vector<double>>& features) {
    if (features.size() < 2) return 0.0;
    const std::size_t d = features[0].size();
    double total = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < features.size(); ++i) {
        if (features[i].size() != d) throw DimensionError("feature vectors have mixed dimensions");
        for (std::size_t j = i + 1; j < features.size(); ++j) {
            double sq = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                const double diff = features[i][k] - features[j][k];
                sq += diff * diff;
            }
            total += std::sqrt(sq);
            ++pairs;
        }
    }
    return total / static_cast<double>(pairs);
}

}  // namespace prism
