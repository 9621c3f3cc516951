#ifndef GTEVAL_EVAL_HPP
#define GTEVAL_EVAL_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gteval/grid.hpp"
#include "gteval/stack.hpp"
#include "gteval/stats.hpp"

namespace gteval {

/// Class-skew integration range for the skew-averaged precision measure:
/// pi' runs over [pi1, pi2] and phi is the dataset positive/negative
/// ratio N_p / N_n.
struct SkewRange {
    double pi1 = 0.0;
    double pi2 = 1.0;
    double phi = 1.0;

    SkewRange(double pi1_, double pi2_, double phi_) : pi1(pi1_), pi2(pi2_), phi(phi_) {
        if (!(pi1 >= 0.0 && pi1 < 1.0) || !(pi2 > 0.0 && pi2 <= 1.0) || !(pi1 < pi2))
            throw ArgumentError("SkewRange: need 0 <= pi1 < pi2 <= 1");
        if (!(phi > 0.0)) throw ArgumentError("SkewRange: phi must be positive");
    }
};

/// N_p / N_n of a ground truth over the ROI.
double gt_skew_ratio(const BinaryMask& gt, const std::optional<BinaryMask>& roi);

/// Closed-form mean over pi' in [pi1, pi2] of
/// pi' TP / (pi' TP + (1 - pi') phi FP). Conventions: 1 when FP = 0
/// (including the no-detection case TP = FP = 0), 0 when TP = 0 and
/// FP > 0.
double pbar(double tp, double fp, const SkewRange& skew);

/// Sub-image rectangle of a composite image; lenient matching never
/// crosses rectangle borders.
struct Rect {
    int x = 0, y = 0, width = 0, height = 0;
};

/// Spatial tolerance for counting detections as true positives.
struct MatchTolerance {
    enum class Mode { exact, lenient };
    Mode mode = Mode::exact;
    double radius = 0.0;     // pixels
    double diag_frac = 0.0;  // when > 0, radius = diag_frac * sub-image diagonal

    static MatchTolerance exact() { return {}; }
    static MatchTolerance lenient(double radius);
    /// The segmentation-benchmark default: 0.0075 of the image diagonal.
    static MatchTolerance lenient_diag(double frac = 0.0075);
};

struct OperatingPoint {
    double theta = 0.0;
    double tp = 0.0, fp = 0.0, fn = 0.0, tn = 0.0;

    double recall() const { return tp + fn > 0.0 ? tp / (tp + fn) : 0.0; }
};

/// Confusion counts of the detection mask {resp >= theta} (within the
/// ROI) against a ground truth. Exact mode is pixelwise. Lenient mode
/// counts distance-transform matches: a ground-truth pixel is a true
/// positive when some detection lies within the radius, a detection
/// farther than the radius from every ground-truth pixel is a false
/// positive, and FN is the number of uncovered ground-truth pixels (so
/// tp + fn = N_p holds in both modes).
OperatingPoint confusion_at(const ScalarField& resp, const BinaryMask& gt, double theta,
                            const MatchTolerance& tol,
                            const std::optional<BinaryMask>& roi = std::nullopt,
                            const std::vector<Rect>& extents = {});

struct CurvePoint {
    double theta = 0.0;
    double tp = 0.0, fp = 0.0, fn = 0.0, tn = 0.0;
    double recall = 0.0;
    double pbar = 0.0;
};

struct PbarRCurve {
    std::vector<CurvePoint> points;  // theta descending, recall ascending
    double auc = 0.0;
    std::size_t np = 0;  // ground-truth positives in the ROI
    std::size_t nn = 0;  // ROI pixels - np
};

struct SweepSpec {
    int max_thresholds = 4096;     // unique values beyond this are quantile-sampled
    int interp_per_segment = 20;   // interpolated points per adjacent pair for the AUC
};

/// Threshold sweep over the response values (endpoints +/-inf always
/// included) with the skew-averaged precision at every operating point.
/// The AUC interpolates TP and FP linearly between adjacent points,
/// re-evaluating the precision at the interpolated counts, and applies
/// the trapezoid rule over recall.
PbarRCurve pr_curve(const ScalarField& resp, const BinaryMask& gt, const SkewRange& skew,
                    const MatchTolerance& tol,
                    const std::optional<BinaryMask>& roi = std::nullopt,
                    const std::vector<Rect>& extents = {}, const SweepSpec& sweep = {});

struct MaybeCorrelation {
    bool defined = false;
    CorrelationResult corr;
};

/// Correlation of a detector response with annotator agreement inside
/// the annotator-marked set C = {A > 0} (first) and over the whole ROI
/// (second). A constant sample yields defined = false.
std::pair<MaybeCorrelation, MaybeCorrelation> cco_cci(
    const ScalarField& resp, const AgreementMap& agreement,
    const std::optional<BinaryMask>& roi = std::nullopt);

struct GtRanking {
    std::string gt_name;
    std::vector<std::string> detector_order;  // descending AUC, ties by name
    std::vector<double> auc;                  // aligned with detector_order
    bool has_ties = false;
};

struct RankingGroup {
    std::vector<std::string> gt_names;
    std::vector<std::string> detector_order;
};

struct RankingTable {
    std::vector<GtRanking> per_gt;
    std::vector<RankingGroup> groups;  // ground truths inducing identical orderings
};

/// AUC of every detector against every ground truth, the per-GT rank
/// ordering, and the distinct-ranking summary. phi_override <= 0 derives
/// phi from each ground truth.
RankingTable rank_detectors(const std::vector<std::pair<std::string, ScalarField>>& responses,
                            const std::vector<std::pair<std::string, BinaryMask>>& gts,
                            double pi1, double pi2, double phi_override,
                            const MatchTolerance& tol,
                            const std::optional<BinaryMask>& roi = std::nullopt,
                            const std::vector<Rect>& extents = {},
                            const SweepSpec& sweep = {});

struct DetectorBounds {
    PbarRCurve lower;  // against Any-GT
    PbarRCurve upper;  // against 0.75-GT
    double auc_min() const;
    double auc_max() const;
};

/// Lower/upper performance estimates of a detector from the agreement
/// extremes of an annotation stack (Any-GT and 0.75-GT).
DetectorBounds performance_bounds(const ScalarField& resp, const AnnotationStack& stack,
                                  double pi1, double pi2, double phi_override,
                                  const MatchTolerance& tol,
                                  const std::vector<Rect>& extents = {},
                                  const SweepSpec& sweep = {});

/// Overlap length of two AUC intervals divided by the length of their
/// union (1 when both intervals coincide, 0 when disjoint; the union
/// length is clamped away from zero).
double interval_overlap(const DetectorBounds& a, const DetectorBounds& b);

}  // namespace gteval

#endif
