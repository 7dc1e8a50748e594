#include "prism/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "prism/errors.hpp"
#include "prism/rng.hpp"

namespace prism {

double DecisionTree::predict(const double* features) const {
    int idx = 0;
    while (nodes[static_cast<std::size_t>(idx)].feature >= 0) {
        const TreeNode& n = nodes[static_cast<std::size_t>(idx)];
        idx = (features[n.feature] <= n.threshold) ? n.left : n.right;
    }
    return nodes[static_cast<std::size_t>(idx)].p1;
}

std::vector<double> pixel_features(const ImageRGB& image, const FeatureSpec& spec) {
    const int h = image.height();
    const int w = image.width();
    const int d = spec.dims();
    const int r = spec.window / 2;
    std::vector<double> out(static_cast<std::size_t>(h) * w * d);

    for (int y = 0; y < h; ++y) {
        const int y0 = std::max(0, y - r);
        const int y1 = std::min(h - 1, y + r);
        for (int x = 0; x < w; ++x) {
            const int x0 = std::max(0, x - r);
            const int x1 = std::min(w - 1, x + r);
            const double count = static_cast<double>((y1 - y0 + 1) * (x1 - x0 + 1));
            double* row = out.data() + (static_cast<std::size_t>(y) * w + x) * d;
            for (int c = 0; c < 3; ++c) {
                double sum = 0.0, sq = 0.0;
                for (int yy = y0; yy <= y1; ++yy) {
                    for (int xx = x0; xx <= x1; ++xx) {
                        const double v = image.at(yy, xx, c);
                        sum += v;
                        sq += v * v;
                    }
                }
                const double mean = sum / count;
                const double var = std::max(0.0, sq / count - mean * mean);
                row[c] = image.at(y, x, c);
                row[3 + c] = mean;
                row[6 + c] = std::sqrt(var);
            }
        }
    }
    return out;
}

namespace {

struct TrainingSet {
    std::vector<double> features;  // n x d row-major
    std::vector<std::uint8_t> labels;
    int dims = 0;
    std::size_t size() const { return labels.size(); }
    const double* row(std::size_t i) const { return features.data() + i * dims; }
};

struct Builder {
    const TrainingSet& data;
    const ForestParams& params;
    std::vector<TreeNode> nodes;
    Rng& rng;

    int build(std::vector<std::size_t>& samples, std::size_t begin, std::size_t end, int depth) {
        const std::size_t n = end - begin;
        std::size_t ones = 0;
        for (std::size_t i = begin; i < end; ++i) ones += data.labels[samples[i]];

        const bool pure = (ones == 0 || ones == n);
        if (pure || depth >= params.max_depth ||
            n < static_cast<std::size_t>(params.min_samples_split)) {
            return make_leaf(ones, n);
        }

        // mtry = ceil(sqrt(d)) features per split
        const int mtry = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(data.dims))));
        std::vector<int> candidates(static_cast<std::size_t>(data.dims));
        std::iota(candidates.begin(), candidates.end(), 0);
        rng.shuffle(candidates.begin(), candidates.end());
        candidates.resize(static_cast<std::size_t>(mtry));

        int best_feature = -1;
        double best_threshold = 0.0;
        double best_score = gini(ones, n);  // must strictly improve on the parent

        std::vector<std::pair<double, std::uint8_t>> sorted(n);
        for (int f : candidates) {
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t s = samples[begin + i];
                sorted[i] = {data.row(s)[f], data.labels[s]};
            }
            std::sort(sorted.begin(), sorted.end());

            std::size_t left_ones = 0;
            for (std::size_t i = 1; i < n; ++i) {
                left_ones += sorted[i - 1].second;
                if (sorted[i].first <= sorted[i - 1].first) continue;  // no gap to split in
                const std::size_t nl = i;
                const std::size_t nr = n - i;
                const double score =
                    (static_cast<double>(nl) * gini(left_ones, nl) +
                     static_cast<double>(nr) * gini(ones - left_ones, nr)) /
                    static_cast<double>(n);
                if (score < best_score - 1e-12) {
                    best_score = score;
                    best_feature = f;
                    best_threshold = 0.5 * (sorted[i - 1].first + sorted[i].first);
                }
            }
        }

        if (best_feature < 0) return make_leaf(ones, n);

        // partition in place
        auto mid_it = std::partition(
            samples.begin() + static_cast<std::ptrdiff_t>(begin),
            samples.begin() + static_cast<std::ptrdiff_t>(end),
            [&](std::size_t s) { return data.row(s)[best_feature] <= best_threshold; });
        const std::size_t mid = static_cast<std::size_t>(mid_it - samples.begin());
        if (mid == begin || mid == end) return make_leaf(ones, n);

        const int index = static_cast<int>(nodes.size());
        nodes.emplace_back();
        nodes[static_cast<std::size_t>(index)].feature = best_feature;
        nodes[static_cast<std::size_t>(index)].threshold = best_threshold;
        const int left = build(samples, begin, mid, depth + 1);
        const int right = build(samples, mid, end, depth + 1);
        nodes[static_cast<std::size_t>(index)].left = left;
        nodes[static_cast<std::size_t>(index)].right = right;
        return index;
    }

    int make_leaf(std::size_t ones, std::size_t n) {
        const int index = static_cast<int>(nodes.size());
        TreeNode leaf;
        leaf.p1 = static_cast<double>(ones) / static_cast<double>(n);
        nodes.push_back(leaf);
        return index;
    }

    static double gini(std::size_t ones, std::size_t n) {
        if (n == 0) return 0.0;
        const double p = static_cast<double>(ones) / static_cast<double>(n);
        return 2.0 * p * (1.0 - p);
    }
};

}  // namespace

MaskClassifier train_mask_classifier(const std::vector<std::pair<ImageRGB, BinaryMask>>& pairs,
                                     std::uint64_t seed, const ForestParams& params,
                                     const FeatureSpec& spec) {
    if (pairs.empty()) throw DataError("training requires at least one image/mask pair");
    if (params.n_trees < 1 || params.max_depth < 1 || params.pixel_budget < 1) {
        throw ConfigError("invalid forest parameters");
    }

    TrainingSet data;
    data.dims = spec.dims();

    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto& [image, mask] = pairs[p];
        if (image.height() != mask.height() || image.width() != mask.width()) {
            throw DimensionError("image and mask shapes do not match");
        }
        const std::vector<double> feats = pixel_features(image, spec);
        const std::size_t total = image.pixel_count();
        const std::size_t budget = std::min(params.pixel_budget, total);

        std::vector<std::size_t> indices(total);
        std::iota(indices.begin(), indices.end(), 0);
        Rng sampler(derive_seed(seed, hash_string("pixel-subsample"), p));
        // partial Fisher-Yates: only the first `budget` draws are needed
        for (std::size_t i = 0; i < budget; ++i) {
            const std::size_t j = i + sampler.below(total - i);
            std::swap(indices[i], indices[j]);
        }
        for (std::size_t i = 0; i < budget; ++i) {
            const std::size_t px = indices[i];
            data.features.insert(data.features.end(), feats.begin() + static_cast<std::ptrdiff_t>(px * spec.dims()),
                                 feats.begin() + static_cast<std::ptrdiff_t>((px + 1) * spec.dims()));
            data.labels.push_back(mask.data()[px]);
        }
    }

    std::size_t total_ones = 0;
    for (auto l : data.labels) total_ones += l;
    if (total_ones == 0 || total_ones == data.size()) {
        throw DataError("training labels are all one class");
    }

    MaskClassifier clf;
    clf.spec_ = spec;
    clf.params_ = params;
    clf.meta_ = {data.size(), total_ones, seed};
    clf.trees_.reserve(static_cast<std::size_t>(params.n_trees));

    for (int t = 0; t < params.n_trees; ++t) {
        Rng rng(derive_seed(seed, hash_string("tree"), static_cast<std::uint64_t>(t)));
        std::vector<std::size_t> bootstrap(data.size());
        for (auto& s : bootstrap) s = rng.below(data.size());

        Builder builder{data, params, {}, rng};
        builder.nodes.reserve(256);
        builder.build(bootstrap, 0, bootstrap.size(), 0);
        clf.trees_.push_back(DecisionTree{std::move(builder.nodes)});
    }
    return clf;
}

double MaskClassifier::predict_proba(const double* features) const {
    double votes = 0.0;
    for (const auto& tree : trees_) {
        votes += tree.predict(features) >= 0.5 ? 1.0 : 0.0;
    }
    return votes / static_cast<double>(trees_.size());
}

BinaryMask MaskClassifier::predict_mask(const ImageRGB& image) const {
    const std::vector<double> feats = pixel_features(image, spec_);
    BinaryMask out(image.height(), image.width());
    const int d = spec_.dims();
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            const double* row =
                feats.data() + (static_cast<std::size_t>(y) * image.width() + x) * d;
            out.set(y, x, predict_proba(row) >= 0.5 ? 1 : 0);
        }
    }
    return out;
}

double pixel_accuracy(const MaskClassifier& clf, const ImageRGB& image, const BinaryMask& truth) {
    if (image.height() != truth.height() || image.width() != truth.width()) {
        throw DimensionError("image and mask shapes do not match");
    }
    const BinaryMask predicted = clf.predict_mask(image);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < predicted.data().size(); ++i) {
        if (predicted.data()[i] == truth.data()[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(predicted.data().size());
}

double morphology_similarity(const ImageRGB& generated, const BinaryMask& gt_mask,
                             const MaskClassifier& clf, MorphologyMode mode) {
    if (generated.height() != gt_mask.height() || generated.width() != gt_mask.width()) {
        throw DimensionError("image and mask shapes do not match");
    }
    if (mode == MorphologyMode::image_vs_mask) {
        std::vector<double> gray(generated.pixel_count());
        std::vector<double> mask_plane(gray.size());
        for (int y = 0; y < generated.height(); ++y) {
            for (int x = 0; x < generated.width(); ++x) {
                const std::size_t i = static_cast<std::size_t>(y) * generated.width() + x;
                gray[i] = generated.gray(y, x);
                mask_plane[i] = static_cast<double>(gt_mask.at(y, x));
            }
        }
        return ssim_plane(gray, mask_plane, generated.height(), generated.width());
    }
    return ssim(clf.predict_mask(generated), gt_mask);
}

}  // namespace prism
