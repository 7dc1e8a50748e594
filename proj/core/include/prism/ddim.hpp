#pragma once

#include <vector>

#include "prism/backend.hpp"
#include "prism/diffusion_config.hpp"
#include "prism/image.hpp"
#include "prism/latent.hpp"
#include "prism/noise.hpp"
#include "prism/schedule.hpp"

namespace prism {

// Two signal-coefficient conventions are in circulation for the forward
// blend. The sqrt form below is what pretrained latent-diffusion backends
// expect, and every inversion identity in this module is stated in it.
//   forward_diffuse:       sqrt(alpha_bar_t) * x0 + sqrt(1 - alpha_bar_t) * eps
//   forward_diffuse_alpha: alpha_bar_t * x0 + sqrt(1 - alpha_bar_t) * eps
LatentTensor forward_diffuse(const LatentTensor& x0, int t, const LatentTensor& eps,
                             const Schedule& sched);
LatentTensor forward_diffuse_alpha(const LatentTensor& x0, int t, const LatentTensor& eps,
                                   const Schedule& sched);

// (z_t - sqrt(1 - alpha_bar_t) * eps_pred) / sqrt(alpha_bar_t)
// Inverts forward_diffuse exactly when eps_pred is the true eps.
LatentTensor predict_x0(const LatentTensor& z_t, const LatentTensor& eps_pred, int t,
                        const Schedule& sched);

// One sampler update from step t to t_prev (t_prev < t; -1 means fully
// denoised). eta > 0 blends in fresh noise and requires a noise tensor.
LatentTensor ddim_step(const LatentTensor& z_t, const LatentTensor& eps_pred, int t, int t_prev,
                       const Schedule& sched, double eta = 0.0,
                       const LatentTensor* noise = nullptr);

struct Img2ImgResult {
    ImageRGB image;
    int iterations = 0;       // floor(strength * steps)
    int t_start = -1;         // schedule index the latent was noised to; -1 if none
    std::vector<int> timesteps;  // descending grid actually executed
};

// Encode, noise to the strength-determined start step, run the deterministic
// sampler over the tail of the step grid, decode. strength = 0 reduces to
// decode(encode(image)).
Img2ImgResult img2img(const ImageRGB& image, DenoiseBackend& backend, const DiffusionConfig& cfg,
                      const Schedule& sched);

// Full descending step grid for a given step count over schedule length T.
std::vector<int> timestep_grid(int steps, int T);

// How an artificial signal added to the input propagates into the
// noise prediction and the recovered noiseless latent.
struct ResidualReport {
    LatentTensor delta;         // prediction shift caused by the injected signal
    double alpha_hat = 0.0;     // sqrt(1 - alpha_bar_t) / sqrt(alpha_bar_t)
    LatentTensor z0_clean;
    LatentTensor z0_shifted;    // shared-z_t branch; exact algebraic identity
    LatentTensor z0_reencoded;  // independent re-encode of the shifted input
    double identity_residual = 0.0;   // max |(z0_shifted - z0_clean) + alpha_hat * delta|
    double reencoded_residual = 0.0;  // same functional, re-encoded branch
};

ResidualReport residual_analysis(const ImageRGB& x, const NoiseField& n, DenoiseBackend& backend,
                                 int t, const Schedule& sched, const std::string& prompt = "",
                                 double guidance = 0.0);

// Side-by-side run of the same injection applied before encoding (pixel
// space) versus directly on the clean latent with an equal-energy tensor.
struct InjectionBranch {
    ImageRGB output;
    double ssim_vs_input = 0.0;
    double mean = 0.0;
    double std_dev = 0.0;
};

struct ComparisonReport {
    InjectionBranch pixel;
    InjectionBranch latent;
    double injected_energy = 0.0;  // l2 norm of the pixel-space signal
};

ComparisonReport latent_injection_compare(const ImageRGB& x, const NoiseField& n,
                                          DenoiseBackend& backend, const DiffusionConfig& cfg,
                                          const Schedule& sched);

}  // namespace prism
