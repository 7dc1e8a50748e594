#pragma once

#include <vector>

namespace prism {

// Cumulative signal-retention sequence alpha_bar_t for a T-step diffusion,
// monotone non-increasing, every entry in (0, 1].
class Schedule {
public:
    static Schedule from_alphas(std::vector<double> alphas_bar,
                                double beta_start = 0.0, double beta_end = 0.0);

    int T() const { return static_cast<int>(alphas_.size()); }
    // alpha_bar(-1) == 1 by convention: the fully-denoised endpoint
    double alpha_bar(int t) const;
    // sqrt(1 - alpha_bar) / sqrt(alpha_bar); grows with t as noise dominates
    double noise_to_signal(int t) const;

    double beta_start() const { return beta_start_; }
    double beta_end() const { return beta_end_; }
    const std::vector<double>& alphas() const { return alphas_; }

private:
    Schedule() = default;
    std::vector<double> alphas_;
    double beta_start_ = 0.0;
    double beta_end_ = 0.0;
};

// Cumulative products of (1 - beta_t) with beta linearly spaced in sqrt
// space (the scaled-linear convention used by pretrained latent-diffusion
// checkpoints). Accepts beta_start == 0 for degenerate no-noising schedules.
Schedule make_schedule(int T, double beta_start, double beta_end);

}  // namespace prism
