#ifndef GTEVAL_FUSION_HPP
#define GTEVAL_FUSION_HPP

#include <string>
#include <vector>

#include "gteval/raters.hpp"
#include "gteval/stack.hpp"

namespace gteval {

/// Per-pixel posterior probability of the object class.
struct SoftLabelMap {
    ImageGrid grid;
    std::vector<double> posterior;

    double at(std::size_t i) const { return posterior[i]; }
};

/// posterior >= threshold, the binary ground-truth view of a soft map.
BinaryMask binarize(const SoftLabelMap& soft, double threshold = 0.5);

/// Threshold voting (Eq.-6 style consensus). Named presets from the
/// ground-truth menu: Any-GT tau = 1/N, 0.5-GT tau = 0.5, 0.75-GT
/// tau = 0.75.
BinaryMask fuse_vote(const AnnotationStack& stack, double tau);

inline BinaryMask any_gt(const AnnotationStack& stack) {
    return fuse_vote(stack, 1.0 / static_cast<double>(stack.n()));
}
inline BinaryMask half_gt(const AnnotationStack& stack) { return fuse_vote(stack, 0.5); }
inline BinaryMask three_quarter_gt(const AnnotationStack& stack) {
    return fuse_vote(stack, 0.75);
}

struct ExclVoteResult {
    BinaryMask mask;
    std::vector<std::string> excluded_ids;
    bool fallback = false;  // outlier removal was skipped (N < 3 or would empty the cohort)
};

/// Threshold vote after removing the outliers found by detect_outliers.
/// Falls back to a plain vote (fallback flag set) when outliers cannot be
/// identified (N < 3) or when exclusion would leave fewer than 2
/// annotators.
ExclVoteResult fuse_excl_vote(const AnnotationStack& stack, double tau);

struct StapleConfig {
    double prior = -1.0;   // global truth prior; <= 0 selects the empirical mean
    double init_p = 0.9;
    double init_q = 0.9;
    double tol = 1e-7;     // on max_j |dp_j| + |dq_j|
    int max_iters = 100;
};

struct RaterPerformance {
    std::vector<std::string> ids;
    std::vector<double> sensitivity;  // p_j
    std::vector<double> specificity;  // q_j
};

struct StapleResult {
    SoftLabelMap posterior;
    RaterPerformance performance;
    int iterations = 0;
    bool converged = false;
    double prior = 0.0;
    /// Observed-data log-likelihood after each M-step; non-decreasing.
    std::vector<double> log_likelihood;
};

/// Simultaneous truth and performance level estimation: EM over the
/// per-pixel truth posterior W and per-rater (sensitivity, specificity),
/// with a global scalar prior and no consensus-vote pre-assignment.
StapleResult fuse_staple(const AnnotationStack& stack, const StapleConfig& cfg = {});

struct SimpleConfig {
    enum class Score { kappa, f1 };
    Score score = Score::kappa;
    double drop_margin = 1.0;  // standard deviations below the mean
    int max_rounds = 10;
    double tau = 0.5;          // vote threshold over the retained cohort
};

struct SimpleResult {
    BinaryMask mask;
    std::vector<std::string> retained_ids;
    int rounds = 0;
    bool stopped_before_drop = false;  // a drop would have left < 2 annotators
};

/// Selective iterative fusion: vote, score every annotator against the
/// estimate, drop the ones scoring below mean - margin * std, re-vote,
/// repeat until the retained set is stable.
SimpleResult fuse_simple(const AnnotationStack& stack, const SimpleConfig& cfg = {});

}  // namespace gteval

#endif
