#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "prism/image.hpp"
#include "prism/metrics.hpp"

namespace prism {

struct ForestParams {
    int n_trees = 50;
    int max_depth = 12;
    std::size_t pixel_budget = 20000;  // training pixels sampled per image
    int min_samples_split = 2;
};

// Per-pixel features: R, G, B, then local mean and local std of each channel
// over a window x window neighborhood (edge windows are clamped).
struct FeatureSpec {
    int window = 5;
    int dims() const { return 9; }
};

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double p1 = 0.0;  // leaf probability of the foreground class
};

struct DecisionTree {
    std::vector<TreeNode> nodes;
    double predict(const double* features) const;
};

// Bagged decision-tree ensemble over per-pixel features; deterministic for
// a fixed (data, seed) pair.
class MaskClassifier {
public:
    struct TrainingMeta {
        std::size_t n_samples = 0;
        std::size_t n_foreground = 0;
        std::uint64_t seed = 0;
    };

    BinaryMask predict_mask(const ImageRGB& image) const;
    // fraction of trees voting foreground for one feature row
    double predict_proba(const double* features) const;

    const FeatureSpec& feature_spec() const { return spec_; }
    const ForestParams& params() const { return params_; }
    const TrainingMeta& training_meta() const { return meta_; }

private:
    friend MaskClassifier train_mask_classifier(
        const std::vector<std::pair<ImageRGB, BinaryMask>>& pairs, std::uint64_t seed,
        const ForestParams& params, const FeatureSpec& spec);

    std::vector<DecisionTree> trees_;
    FeatureSpec spec_;
    ForestParams params_;
    TrainingMeta meta_;
};

// Throws DataError when the training labels are all one class.
MaskClassifier train_mask_classifier(const std::vector<std::pair<ImageRGB, BinaryMask>>& pairs,
                                     std::uint64_t seed, const ForestParams& params = {},
                                     const FeatureSpec& spec = {});

// Row-major dims()-wide feature matrix for every pixel of the image.
std::vector<double> pixel_features(const ImageRGB& image, const FeatureSpec& spec);

double pixel_accuracy(const MaskClassifier& clf, const ImageRGB& image, const BinaryMask& truth);

enum class MorphologyMode {
    predicted_mask,  // ssim(predicted mask, ground truth mask)
    image_vs_mask,   // ssim(generated grayscale, ground truth mask) directly
};

double morphology_similarity(const ImageRGB& generated, const BinaryMask& gt_mask,
                             const MaskClassifier& clf,
                             MorphologyMode mode = MorphologyMode::predicted_mask);

}  // namespace prism
