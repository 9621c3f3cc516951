#ifndef GTEVAL_RATERS_HPP
#define GTEVAL_RATERS_HPP

#include <optional>
#include <string>
#include <vector>

#include "gteval/stack.hpp"

namespace gteval {

/// Symmetric N x N pairwise F1-scores with the per-pair precision and
/// recall retained. diff(i, j) = 1 - f1(i, j).
class F1Matrix {
public:
    F1Matrix(std::vector<std::string> ids, std::vector<double> f1,
             std::vector<double> precision, std::vector<double> recall,
             std::vector<bool> degenerate);

    int n() const { return static_cast<int>(ids_.size()); }
    const std::vector<std::string>& ids() const { return ids_; }
    double f1(int i, int j) const { return f1_[idx(i, j)]; }
    double precision(int i, int j) const { return precision_[idx(i, j)]; }
    double recall(int i, int j) const { return recall_[idx(i, j)]; }
    double diff(int i, int j) const { return 1.0 - f1(i, j); }
    /// True when annotator i has an empty mask (F1 against it is the
    /// zero-intersection convention, not a measurement).
    bool degenerate(int i) const { return degenerate_[static_cast<std::size_t>(i)]; }

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * ids_.size() + static_cast<std::size_t>(j);
    }
    std::vector<std::string> ids_;
    std::vector<double> f1_, precision_, recall_;
    std::vector<bool> degenerate_;
};

/// Pairwise F1 over the ROI: p_ij = |Mi and Mj| / |Mi|,
/// r_ij = |Mi and Mj| / |Mj|, F = 2pr / (p + r), 0 when p + r = 0.
F1Matrix pairwise_f1(const AnnotationStack& stack);

struct DendrogramMerge {
    // Cluster ids: 0..N-1 are leaves; N+k is the cluster created by the
    // k-th merge (k starting at 0).
    int left = 0;
    int right = 0;
    double height = 0.0;
    int size = 0;
};

struct Dendrogram {
    std::vector<std::string> leaf_ids;
    std::vector<DendrogramMerge> merges;

    /// Newick text with branch lengths derived from merge heights.
    std::string to_newick() const;
};

/// Agglomerative clustering of the F1 difference matrix using the
/// Lance-Williams form of Ward's minimum variance update:
/// d(ij, k) = [(ni + nk) d(i,k) + (nj + nk) d(j,k) - nk d(i,j)] / (ni + nj + nk).
/// Ties merge the lexicographically smallest cluster-id pair.
Dendrogram ward_cluster(const F1Matrix& matrix);

struct OutlierResult {
    std::vector<std::string> outlier_ids;
    std::vector<double> mean_diffs;   // m_i = mean over j != i of (1 - F_ij)
    double mean = 0.0;                // mean of m
    double stddev = 0.0;              // std of m (population by default)
    bool reliable = true;             // false when N < 3
};

/// Flags annotator i iff m_i > mean(m) + std(m). With N < 3 no outlier is
/// identifiable; the result is empty with reliable = false.
OutlierResult detect_outliers(const F1Matrix& matrix, bool sample_std = false);

/// The thresholding rule alone, applied to an externally supplied
/// mean-difference vector; returns the flagged indices.
std::vector<int> flag_mean_diff_outliers(const std::vector<double>& mean_diffs,
                                         bool sample_std = false);

struct ConfusionCounts {
    std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
    std::uint64_t total() const { return tp + fp + fn + tn; }
};

/// Pixelwise confusion between two masks over the ROI.
ConfusionCounts confusion(const BinaryMask& test, const BinaryMask& reference,
                          const std::optional<BinaryMask>& roi);

struct RaterStatsRow {
    std::string id;
    // Statistics are absent when their denominator is zero.
    std::optional<double> sensitivity, specificity, ppv, npv, kappa;
    ConfusionCounts counts;
};

/// Sens/Spec/PPV/NPV/Cohen's kappa of each annotator against a consensus
/// mask, over the ROI.
std::vector<RaterStatsRow> rater_stats(const AnnotationStack& stack,
                                       const BinaryMask& consensus);

/// Cohen's kappa of the counts; absent when p_e = 1.
std::optional<double> cohen_kappa(const ConfusionCounts& c);

}  // namespace gteval

#endif
