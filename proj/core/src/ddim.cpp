#include "prism/ddim.hpp"

#include <cmath>
#include <string>

#include "prism/errors.hpp"
#include "prism/metrics.hpp"
#include "prism/rng.hpp"

namespace prism {

void DiffusionConfig::validate() const {
    if (steps < 1) throw ConfigError("steps must be >= 1");
    if (!(strength >= 0.0 && strength <= 1.0)) throw ConfigError("strength must lie in [0,1]");
    if (guidance < 0.0) throw ConfigError("guidance must be >= 0");
    if (!(eta >= 0.0 && eta <= 1.0)) throw ConfigError("eta must lie in [0,1]");
}

LatentTensor forward_diffuse(const LatentTensor& x0, int t, const LatentTensor& eps,
                             const Schedule& sched) {
    if (!x0.same_shape(eps)) throw DimensionError("x0 and eps shapes do not match");
    const double a = sched.alpha_bar(t);
    return axpy(scale(x0, std::sqrt(a)), std::sqrt(1.0 - a), eps);
}

LatentTensor forward_diffuse_alpha(const LatentTensor& x0, int t, const LatentTensor& eps,
                                   const Schedule& sched) {
    if (!x0.same_shape(eps)) throw DimensionError("x0 and eps shapes do not match");
    const double a = sched.alpha_bar(t);
    return axpy(scale(x0, a), std::sqrt(1.0 - a), eps);
}

LatentTensor predict_x0(const LatentTensor& z_t, const LatentTensor& eps_pred, int t,
                        const Schedule& sched) {
    if (!z_t.same_shape(eps_pred)) throw DimensionError("z_t and eps_pred shapes do not match");
    const double a = sched.alpha_bar(t);
    if (a <= 0.0) throw NumericError("alpha_bar vanishes at step " + std::to_string(t));
    return scale(axpy(z_t, -std::sqrt(1.0 - a), eps_pred), 1.0 / std::sqrt(a));
}

LatentTensor ddim_step(const LatentTensor& z_t, const LatentTensor& eps_pred, int t, int t_prev,
                       const Schedule& sched, double eta, const LatentTensor* noise) {
    if (t_prev >= t) throw SequencingError("t_prev must be smaller than t");
    if (!(eta >= 0.0 && eta <= 1.0)) throw ConfigError("eta must lie in [0,1]");

    const LatentTensor x0_hat = predict_x0(z_t, eps_pred, t, sched);
    const double a_prev = sched.alpha_bar(t_prev);
    const double a_t = sched.alpha_bar(t);

    double sigma = 0.0;
    if (eta > 0.0 && a_prev < 1.0) {
        sigma = eta * std::sqrt((1.0 - a_prev) / (1.0 - a_t)) * std::sqrt(1.0 - a_t / a_prev);
    }
    const double dir_coeff = std::sqrt(std::max(0.0, 1.0 - a_prev - sigma * sigma));

    LatentTensor out = axpy(scale(x0_hat, std::sqrt(a_prev)), dir_coeff, eps_pred);
    if (sigma > 0.0) {
        if (noise == nullptr) throw ConfigError("eta > 0 requires a noise tensor");
        out = axpy(out, sigma, *noise);
    }
    if (!out.all_finite()) throw NumericError("sampler state diverged (non-finite latent)");
    return out;
}

std::vector<int> timestep_grid(int steps, int T) {
    if (steps < 1 || steps > T) throw ConfigError("step count must lie in [1, T]");
    std::vector<int> grid(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        // descending, tail-aligned: steps=10, T=1000 -> 999, 899, ..., 99
        grid[static_cast<std::size_t>(i)] =
            static_cast<int>((static_cast<long long>(steps - i) * T) / steps) - 1;
    }
    return grid;
}

namespace {

LatentTensor standard_normal_like(const LatentTensor& shape, Rng& rng) {
    LatentTensor out(shape.channels, shape.height, shape.width);
    for (double& v : out.values) v = rng.normal();
    return out;
}

// Denoising tail shared by the pixel-space and latent-space entry points.
Img2ImgResult run_from_latent(LatentTensor z, DenoiseBackend& backend, const DiffusionConfig& cfg,
                              const Schedule& sched, Rng& rng) {
    Img2ImgResult result;
    result.iterations = static_cast<int>(std::floor(cfg.strength * cfg.steps));
    if (result.iterations == 0) {
        result.image = backend.decode(z);
        return result;
    }

    const std::vector<int> grid = timestep_grid(cfg.steps, sched.T());
    const int first = cfg.steps - result.iterations;
    result.t_start = grid[static_cast<std::size_t>(first)];
    result.timesteps.assign(grid.begin() + first, grid.end());

    const LatentTensor eps0 = standard_normal_like(z, rng);
    z = forward_diffuse(z, result.t_start, eps0, sched);

    for (std::size_t i = 0; i < result.timesteps.size(); ++i) {
        const int t = result.timesteps[i];
        const int t_prev = (i + 1 < result.timesteps.size()) ? result.timesteps[i + 1] : -1;
        const LatentTensor eps = backend.predict_eps(z, t, cfg.prompt, cfg.guidance);
        LatentTensor fresh;
        const LatentTensor* noise_ptr = nullptr;
        if (cfg.eta > 0.0) {
            fresh = standard_normal_like(z, rng);
            noise_ptr = &fresh;
        }
        z = ddim_step(z, eps, t, t_prev, sched, cfg.eta, noise_ptr);
    }
    if (!z.all_finite()) throw NumericError("sampler state diverged (non-finite latent)");
    result.image = backend.decode(z);
    return result;
}

}  // namespace

Img2ImgResult img2img(const ImageRGB& image, DenoiseBackend& backend, const DiffusionConfig& cfg,
                      const Schedule& sched) {
    cfg.validate();
    Rng rng(derive_seed(cfg.seed, hash_string("img2img")));
    return run_from_latent(backend.encode(image), backend, cfg, sched, rng);
}

ResidualReport residual_analysis(const ImageRGB& x, const NoiseField& n, DenoiseBackend& backend,
                                 int t, const Schedule& sched, const std::string& prompt,
                                 double guidance) {
    if (n.height() != x.height() || n.width() != x.width()) {
        throw DimensionError("noise field dimensions do not match image");
    }

    Grid3 shifted = x.grid();
    for (std::size_t i = 0; i < shifted.values.size(); ++i) {
        shifted.values[i] += n.values.values[i];
    }

    const LatentTensor z_t = backend.encode(x);
    const LatentTensor z_t_shifted = backend.encode(ImageRGB::from_raw_unclipped(std::move(shifted)));

    const LatentTensor eps_clean = backend.predict_eps(z_t, t, prompt, guidance);
    const LatentTensor eps_shifted = backend.predict_eps(z_t_shifted, t, prompt, guidance);

    ResidualReport report;
    report.delta = sub(eps_shifted, eps_clean);
    report.alpha_hat = sched.noise_to_signal(t);
    report.z0_clean = predict_x0(z_t, eps_clean, t, sched);
    // shared z_t: only the prediction shift enters, so the recovered latent
    // moves by exactly -alpha_hat * delta
    report.z0_shifted = predict_x0(z_t, add(eps_clean, report.delta), t, sched);
    report.z0_reencoded = predict_x0(z_t_shifted, eps_shifted, t, sched);

    const LatentTensor shift_term = scale(report.delta, report.alpha_hat);
    report.identity_residual = max_abs_diff(sub(report.z0_shifted, report.z0_clean),
                                            scale(shift_term, -1.0));
    report.reencoded_residual = max_abs_diff(sub(report.z0_reencoded, report.z0_clean),
                                             scale(shift_term, -1.0));
    return report;
}

namespace {

InjectionBranch make_branch(ImageRGB output, const ImageRGB& reference) {
    InjectionBranch b;
    b.ssim_vs_input = ssim(output, reference);
    double sum = 0.0;
    for (double v : output.data()) sum += v;
    const double mean = sum / static_cast<double>(output.data().size());
    double sq = 0.0;
    for (double v : output.data()) sq += (v - mean) * (v - mean);
    b.mean = mean;
    b.std_dev = std::sqrt(sq / static_cast<double>(output.data().size()));
    b.output = std::move(output);
    return b;
}

}  // namespace

ComparisonReport latent_injection_compare(const ImageRGB& x, const NoiseField& n,
                                          DenoiseBackend& backend, const DiffusionConfig& cfg,
                                          const Schedule& sched) {
    cfg.validate();
    if (n.height() != x.height() || n.width() != x.width()) {
        throw DimensionError("noise field dimensions do not match image");
    }

    ComparisonReport report;

    double energy_sq = 0.0;
    for (double v : n.values.values) energy_sq += v * v;
    report.injected_energy = std::sqrt(energy_sq);

    // pixel branch: inject before encoding, clip back into image range
    Grid3 pixel_in = x.grid();
    for (std::size_t i = 0; i < pixel_in.values.size(); ++i) {
        pixel_in.values[i] += n.values.values[i];
    }
    {
        Rng rng(derive_seed(cfg.seed, hash_string("img2img")));
        auto out = run_from_latent(backend.encode(ImageRGB::from_clipped(pixel_in)), backend, cfg,
                                   sched, rng);
        report.pixel = make_branch(std::move(out.image), x);
    }

    // latent branch: perturb the clean latent with an equal-energy tensor
    {
        LatentTensor z = backend.encode(x);
        Rng wrng(derive_seed(cfg.seed, hash_string("latent-inject")));
        LatentTensor w(z.channels, z.height, z.width);
        for (double& v : w.values) v = wrng.normal();
        const double norm = w.l2_norm();
        if (norm > 0.0 && report.injected_energy > 0.0) {
            w = scale(w, report.injected_energy / norm);
            z = add(z, w);
        }
        Rng rng(derive_seed(cfg.seed, hash_string("img2img")));
        auto out = run_from_latent(std::move(z), backend, cfg, sched, rng);
        report.latent = make_branch(std::move(out.image), x);
    }
    return report;
}

}  // namespace prism
