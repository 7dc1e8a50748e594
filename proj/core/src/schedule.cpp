#include "prism/schedule.hpp"

#include <cmath>
#include <string>

#include "prism/errors.hpp"

namespace prism {

Schedule Schedule::from_alphas(std::vector<double> alphas_bar, double beta_start, double beta_end) {
    if (alphas_bar.empty()) throw ConfigError("schedule needs at least one step");
    double prev = 1.0;
    for (double a : alphas_bar) {
        if (!(a > 0.0 && a <= 1.0)) throw ConfigError("alpha_bar values must lie in (0,1]");
        if (a > prev + 1e-15) throw ConfigError("alpha_bar sequence must be non-increasing");
        prev = a;
    }
    Schedule s;
    s.alphas_ = std::move(alphas_bar);
    s.beta_start_ = beta_start;
    s.beta_end_ = beta_end;
    return s;
}

double Schedule::alpha_bar(int t) const {
    if (t < 0) return 1.0;
    if (t >= T()) throw ConfigError("step index " + std::to_string(t) + " out of range");
    return alphas_[static_cast<std::size_t>(t)];
}

double Schedule::noise_to_signal(int t) const {
    const double a = alpha_bar(t);
    return std::sqrt(1.0 - a) / std::sqrt(a);
}

Schedule make_schedule(int T, double beta_start, double beta_end) {
    if (T < 1) throw ConfigError("schedule length must be >= 1");
    if (!(beta_start >= 0.0 && beta_start <= beta_end && beta_end < 1.0)) {
        throw ConfigError("betas must satisfy 0 <= beta_start <= beta_end < 1");
    }
    std::vector<double> alphas(static_cast<std::size_t>(T));
    const double s0 = std::sqrt(beta_start);
    const double s1 = std::sqrt(beta_end);
    double acc = 1.0;
    for (int t = 0; t < T; ++t) {
        const double frac = (T == 1) ? 0.0 : static_cast<double>(t) / (T - 1);
        const double root = s0 + (s1 - s0) * frac;
        acc *= 1.0 - root * root;
        alphas[static_cast<std::size_t>(t)] = acc;
    }
    return Schedule::from_alphas(std::move(alphas), beta_start, beta_end);
}

}  // namespace prism
