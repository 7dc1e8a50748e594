#pragma once

namespace prism {

// Externally reported evaluation scores for the systems this toolkit is
// routinely compared against (nFID over 10k images, CLIP score, mask-recovery
// SSIM). Kept as constants so reports can overlay them next to fresh runs.
struct ReferenceScore {
    const char* method;
    double nfid_10k;
    double clip_score;
    double ssim;
};

inline constexpr ReferenceScore kReferenceScores[] = {
    {"sd15", 0.6039, 28.73, 0.9692},
    {"controlnet_best", 0.8531, 27.97, 0.9801},
    {"uni_controlnet", 0.8311, 28.01, 0.9378},
    {"fully_random", 0.8893, 27.77, 0.5067},
    {"prism_sigma_0.01", 0.5238, 28.78, 0.9697},
    {"prism_sigma_0.05", 0.4594, 29.42, 0.9636},
    {"prism_sigma_0.1", 0.4444, 29.47, 0.9566},
    {"prism_sigma_0.5", 0.4241, 29.40, 0.9254},
    {"prism_sigma_1.0", 0.4887, 29.19, 0.9254},
};

// Module ablation scores from the same study: noise injection and channel
// shuffling, separately and combined, on top of the sd15 baseline.
inline constexpr ReferenceScore kReferenceAblation[] = {
    {"sd15", 0.6039, 28.73, 0.9692},
    {"noise_only", 0.5330, 28.78, 0.9718},
    {"chroma_only", 0.5727, 29.03, 0.9726},
    {"noise_chroma", 0.4241, 29.47, 0.9697},
};

}  // namespace prism
