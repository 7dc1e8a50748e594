#include "prism/noise.hpp"

#include <cmath>
#include <numeric>

#include "prism/errors.hpp"
#include "prism/rng.hpp"

namespace prism {

const char* to_string(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::gaussian: return "gaussian";
        case NoiseKind::salt_pepper: return "salt_pepper";
        case NoiseKind::perlin: return "perlin";
    }
    return "unknown";
}

NoiseKind noise_kind_from_string(const std::string& s) {
    if (s == "gaussian") return NoiseKind::gaussian;
    if (s == "salt_pepper") return NoiseKind::salt_pepper;
    if (s == "perlin") return NoiseKind::perlin;
    throw ConfigError("unknown noise kind: " + s);
}

void NoiseSpec::validate() const {
    if (kind != NoiseKind::gaussian && kind != NoiseKind::salt_pepper && kind != NoiseKind::perlin) {
        throw ConfigError("unknown noise kind");
    }
    if (sigma < 0.0) throw ConfigError("noise sigma must be >= 0");
    if (density < 0.0 || density > 1.0) throw ConfigError("salt-pepper density must lie in [0,1]");
    if (scale <= 0.0) throw ConfigError("perlin scale must be positive");
    if (octaves < 1) throw ConfigError("perlin octaves must be >= 1");
}

void build_permutation(std::uint64_t seed, std::uint8_t perm[512]) {
    std::array<std::uint8_t, 256> base;
    std::iota(base.begin(), base.end(), 0);
    Rng rng(derive_seed(seed, hash_string("perlin-perm")));
    rng.shuffle(base.begin(), base.end());
    for (int i = 0; i < 256; ++i) {
        perm[i] = base[i];
        perm[i + 256] = base[i];
    }
}

namespace {

inline double fade(double t) {
    return t * t * t * (t * (t * 6.0 - 15.0) + 10.0);
}

inline double lerp(double a, double b, double t) {
    return a + t * (b - a);
}

// 8 gradient directions keyed by the lattice hash
inline double grad(int hash, double dx, double dy) {
    switch (hash & 7) {
        case 0: return dx + dy;
        case 1: return -dx + dy;
        case 2: return dx - dy;
        case 3: return -dx - dy;
        case 4: return dx;
        case 5: return -dx;
        case 6: return dy;
        default: return -dy;
    }
}

double perlin2d(double x, double y, const std::uint8_t perm[512]) {
    const int xi = static_cast<int>(std::floor(x));
    const int yi = static_cast<int>(std::floor(y));
    const double dx = x - xi;
    const double dy = y - yi;
    const int X = xi & 255;
    const int Y = yi & 255;

    const int aa = perm[perm[X] + Y];
    const int ab = perm[perm[X] + Y + 1];
    const int ba = perm[perm[X + 1] + Y];
    const int bb = perm[perm[X + 1] + Y + 1];

    const double u = fade(dx);
    const double v = fade(dy);
    const double x0 = lerp(grad(aa, dx, dy), grad(ba, dx - 1.0, dy), u);
    const double x1 = lerp(grad(ab, dx, dy - 1.0), grad(bb, dx - 1.0, dy - 1.0), u);
    return lerp(x0, x1, v);
}

}  // namespace

double perlin_octaves(double x, double y, const std::uint8_t perm[512], int octaves) {
    double sum = 0.0;
    double amplitude = 1.0;
    double frequency = 1.0;
    double norm = 0.0;
    for (int o = 0; o < octaves; ++o) {
        sum += amplitude * perlin2d(x * frequency, y * frequency, perm);
        norm += amplitude;
        amplitude *= 0.5;
        frequency *= 2.0;
    }
    return sum / norm;
}

Grid3 sample_noise_resolved(const NoiseSpec& spec, int height, int width,
                            const std::array<double, 3>& mean_per_channel) {
    spec.validate();
    if (height < 1 || width < 1) throw DimensionError("noise field dimensions must be positive");

    Grid3 field(height, width);
    switch (spec.kind) {
        case NoiseKind::gaussian: {
            Rng rng(derive_seed(spec.seed, hash_string("gaussian")));
            for (int y = 0; y < height; ++y) {
                for (int x = 0; x < width; ++x) {
                    for (int c = 0; c < 3; ++c) {
                        field.at(y, x, c) = mean_per_channel[c] + spec.sigma * rng.normal();
                    }
                }
            }
            break;
        }
        case NoiseKind::salt_pepper: {
            // impulse noise: no mean offset, all channels of a pixel together
            Rng rng(derive_seed(spec.seed, hash_string("salt_pepper")));
            const double amplitude = spec.sigma;
            for (int y = 0; y < height; ++y) {
                for (int x = 0; x < width; ++x) {
                    const double u = rng.uniform();
                    double v = 0.0;
                    if (u < spec.density / 2.0) v = amplitude;
                    else if (u < spec.density) v = -amplitude;
                    field.at(y, x, 0) = v;
                    field.at(y, x, 1) = v;
                    field.at(y, x, 2) = v;
                }
            }
            break;
        }
        case NoiseKind::perlin: {
            for (int c = 0; c < 3; ++c) {
                std::uint8_t perm[512];
                build_permutation(derive_seed(spec.seed, hash_string("perlin-channel"), c), perm);
                double sum = 0.0;
                double sq = 0.0;
                const std::size_t n = static_cast<std::size_t>(height) * width;
                std::vector<double> raw(n);
                for (int y = 0; y < height; ++y) {
                    for (int x = 0; x < width; ++x) {
                        const double v =
                            perlin_octaves(x / spec.scale, y / spec.scale, perm, spec.octaves);
                        raw[static_cast<std::size_t>(y) * width + x] = v;
                        sum += v;
                        sq += v * v;
                    }
                }
                const double mean = sum / static_cast<double>(n);
                const double var = sq / static_cast<double>(n) - mean * mean;
                const double std_dev = var > 0.0 ? std::sqrt(var) : 0.0;
                for (int y = 0; y < height; ++y) {
                    for (int x = 0; x < width; ++x) {
                        const double v = raw[static_cast<std::size_t>(y) * width + x];
                        // degenerate fields (single lattice cell corner case) collapse to the mean
                        const double z = std_dev > 1e-12 ? (v - mean) / std_dev : 0.0;
                        field.at(y, x, c) = mean_per_channel[c] + spec.sigma * z;
                    }
                }
            }
            break;
        }
    }
    return field;
}

NoiseField sample_noise(const NoiseSpec& spec, int height, int width) {
    const double mu = spec.mu.value_or(0.0);
    NoiseField f;
    f.values = sample_noise_resolved(spec, height, width, {mu, mu, mu});
    f.spec = spec;
    return f;
}

}  // namespace prism
