#include "gteval/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "gteval/distance.hpp"
#include "gteval/fusion.hpp"

namespace gteval {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

MatchTolerance MatchTolerance::lenient(double radius) {
    if (!(radius > 0.0))
        throw ArgumentError("MatchTolerance: lenient radius must be positive");
    MatchTolerance t;
    t.mode = Mode::lenient;
    t.radius = radius;
    return t;
}

MatchTolerance MatchTolerance::lenient_diag(double frac) {
    if (!(frac > 0.0))
        throw ArgumentError("MatchTolerance: diagonal fraction must be positive");
    MatchTolerance t;
    t.mode = Mode::lenient;
    t.diag_frac = frac;
    return t;
}

double gt_skew_ratio(const BinaryMask& gt, const std::optional<BinaryMask>& roi) {
    std::size_t np = 0, total = 0;
    for (std::size_t i = 0; i < gt.size(); ++i) {
        if (roi && !roi->at(i)) continue;
        ++total;
        if (gt.at(i)) ++np;
    }
    if (np == 0) throw DataError("gt_skew_ratio: ground truth has no positive pixel");
    if (np == total) throw DataError("gt_skew_ratio: ground truth has no negative pixel");
    return static_cast<double>(np) / static_cast<double>(total - np);
}

double pbar(double tp, double fp, const SkewRange& skew) {
    const double a = tp;
    const double b = skew.phi * fp;
    if (b == 0.0) return 1.0;  // covers the no-detection convention TP = FP = 0
    if (a == 0.0) return 0.0;

    const double span = skew.pi2 - skew.pi1;
    const double d = a - b;
    if (d == 0.0) return 0.5 * (skew.pi1 + skew.pi2);

    const double base = b + skew.pi1 * d;  // pi1*a + (1 - pi1)*b > 0
    const double z = d * span / base;
    if (std::fabs(z) < 1e-6) {
        // Near-cancellation regime: expand 1/(base + u d) in u d / base.
        double sum = 0.0;
        double zk = 1.0;
        for (int k = 0; k < 8; ++k) {
            sum += zk * (skew.pi1 / (k + 1) + span / (k + 2));
            zk *= -z;
        }
        return a / base * sum;
    }
    return a / d * (1.0 - b / (d * span) * std::log1p(z));
}

namespace {

// Threshold-independent view of one (response, ground truth) pairing:
// sorted responses of pixels that can only ever be false positives, and
// the per-ground-truth-pixel maximum response within the match radius.
struct EvalContext {
    std::vector<double> far_resp;   // ascending
    std::vector<double> cover_max;  // ascending
    std::size_t np = 0;
    std::size_t nn = 0;
};

std::vector<std::pair<int, int>> disk_offsets(double radius) {
    const int r = static_cast<int>(std::floor(radius));
    std::vector<std::pair<int, int>> offsets;
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx)
            if (static_cast<double>(dx) * dx + static_cast<double>(dy) * dy <=
                radius * radius)
                offsets.emplace_back(dx, dy);
    return offsets;
}

EvalContext build_context(const ScalarField& resp, const BinaryMask& gt,
                          const MatchTolerance& tol, const std::optional<BinaryMask>& roi,
                          const std::vector<Rect>& extents) {
    require_same_grid(resp.grid(), gt.grid(), "evaluation");
    if (roi) require_same_grid(resp.grid(), roi->grid(), "evaluation ROI");
    resp.require_finite("detector response");

    const ImageGrid& grid = resp.grid();
    std::vector<Rect> rects = extents;
    if (rects.empty()) rects.push_back({0, 0, grid.width, grid.height});

    EvalContext ctx;
    for (const Rect& rect : rects) {
        if (rect.x < 0 || rect.y < 0 || rect.width < 1 || rect.height < 1 ||
            rect.x + rect.width > grid.width || rect.y + rect.height > grid.height)
            throw ArgumentError("evaluation: sub-image extent outside the grid");

        const ImageGrid sub(rect.width, rect.height);
        const bool lenient = tol.mode == MatchTolerance::Mode::lenient;
        const double radius =
            lenient ? (tol.diag_frac > 0.0 ? tol.diag_frac * sub.diagonal() : tol.radius)
                    : 0.0;

        // Ground truth restricted to this extent and the ROI.
        BinaryMask sub_gt(sub);
        for (int y = 0; y < rect.height; ++y)
            for (int x = 0; x < rect.width; ++x) {
                const bool in = roi ? roi->at(rect.x + x, rect.y + y) != 0 : true;
                sub_gt.set(x, y, in && gt.at(rect.x + x, rect.y + y) != 0);
            }

        std::vector<double> near_sq;
        if (lenient) near_sq = squared_distance_transform(sub_gt);
        const double r2 = radius * radius;
        const auto is_near = [&](int x, int y) {
            if (!lenient) return sub_gt.at(x, y) != 0;
            return near_sq[sub.index(x, y)] <= r2;
        };

        const auto offsets = lenient ? disk_offsets(radius)
                                     : std::vector<std::pair<int, int>>{{0, 0}};
        for (int y = 0; y < rect.height; ++y)
            for (int x = 0; x < rect.width; ++x) {
                const int gx = rect.x + x, gy = rect.y + y;
                if (roi && !roi->at(gx, gy)) continue;
                if (sub_gt.at(x, y)) {
                    ++ctx.np;
                    double best = -kInf;
                    for (const auto& [dx, dy] : offsets) {
                        const int nx = x + dx, ny = y + dy;
                        if (nx < 0 || nx >= rect.width || ny < 0 || ny >= rect.height)
                            continue;
                        if (roi && !roi->at(rect.x + nx, rect.y + ny)) continue;
                        best = std::max(best, resp.at(rect.x + nx, rect.y + ny));
                    }
                    ctx.cover_max.push_back(best);
                } else {
                    ++ctx.nn;
                }
                if (!is_near(x, y)) ctx.far_resp.push_back(resp.at(gx, gy));
            }
    }
    std::sort(ctx.far_resp.begin(), ctx.far_resp.end());
    std::sort(ctx.cover_max.begin(), ctx.cover_max.end());
    return ctx;
}

OperatingPoint point_at(const EvalContext& ctx, double theta) {
    OperatingPoint op;
    op.theta = theta;
    const auto count_ge = [&](const std::vector<double>& sorted) {
        return static_cast<double>(sorted.end() -
                                   std::lower_bound(sorted.begin(), sorted.end(), theta));
    };
    op.tp = count_ge(ctx.cover_max);
    op.fp = count_ge(ctx.far_resp);
    op.fn = static_cast<double>(ctx.np) - op.tp;
    op.tn = static_cast<double>(ctx.nn) - op.fp;
    return op;
}

std::vector<double> select_thresholds(const ScalarField& resp,
                                      const std::optional<BinaryMask>& roi,
                                      const SweepSpec& sweep) {
    std::vector<double> values;
    values.reserve(resp.size());
    for (std::size_t i = 0; i < resp.size(); ++i) {
        if (roi && !roi->at(i)) continue;
        values.push_back(resp.at(i));
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    std::vector<double> thresholds;
    thresholds.push_back(kInf);
    if (static_cast<int>(values.size()) <= sweep.max_thresholds) {
        thresholds.insert(thresholds.end(), values.rbegin(), values.rend());
    } else {
        // Quantile-spaced subset of the unique values, endpoints kept.
        const std::size_t u = values.size();
        const std::size_t t = static_cast<std::size_t>(sweep.max_thresholds);
        double last = kInf;
        for (std::size_t i = 0; i < t; ++i) {
            const std::size_t pick =
                u - 1 - static_cast<std::size_t>(std::llround(
                            static_cast<double>(i) * static_cast<double>(u - 1) /
                            static_cast<double>(t - 1)));
            if (values[pick] != last) {
                thresholds.push_back(values[pick]);
                last = values[pick];
            }
        }
    }
    thresholds.push_back(-kInf);
    return thresholds;
}

}  // namespace

OperatingPoint confusion_at(const ScalarField& resp, const BinaryMask& gt, double theta,
                            const MatchTolerance& tol, const std::optional<BinaryMask>& roi,
                            const std::vector<Rect>& extents) {
    const EvalContext ctx = build_context(resp, gt, tol, roi, extents);
    return point_at(ctx, theta);
}

PbarRCurve pr_curve(const ScalarField& resp, const BinaryMask& gt, const SkewRange& skew,
                    const MatchTolerance& tol, const std::optional<BinaryMask>& roi,
                    const std::vector<Rect>& extents, const SweepSpec& sweep) {
    const EvalContext ctx = build_context(resp, gt, tol, roi, extents);
    if (ctx.np == 0)
        throw DataError("pr_curve: ground truth has no positive pixel (recall undefined)");

    PbarRCurve curve;
    curve.np = ctx.np;
    curve.nn = ctx.nn;

    const std::vector<double> thresholds = select_thresholds(resp, roi, sweep);
    curve.points.reserve(thresholds.size());
    for (double theta : thresholds) {
        const OperatingPoint op = point_at(ctx, theta);
        CurvePoint cp;
        cp.theta = theta;
        cp.tp = op.tp;
        cp.fp = op.fp;
        cp.fn = op.fn;
        cp.tn = op.tn;
        cp.recall = op.tp / static_cast<double>(ctx.np);
        cp.pbar = pbar(op.tp, op.fp, skew);
        curve.points.push_back(cp);
    }

    // Densified interpolation: TP and FP linear between adjacent points,
    // precision re-evaluated at the interpolated counts, trapezoids over
    // recall.
    const int d = std::max(1, sweep.interp_per_segment);
    double auc = 0.0;
    double prev_recall = curve.points.front().recall;
    double prev_pbar = curve.points.front().pbar;
    for (std::size_t s = 0; s + 1 < curve.points.size(); ++s) {
        const CurvePoint& p0 = curve.points[s];
        const CurvePoint& p1 = curve.points[s + 1];
        for (int k = 1; k <= d; ++k) {
            const double t = static_cast<double>(k) / static_cast<double>(d);
            const double tp = p0.tp + (p1.tp - p0.tp) * t;
            const double fp = p0.fp + (p1.fp - p0.fp) * t;
            const double recall = tp / static_cast<double>(ctx.np);
            const double pb = pbar(tp, fp, skew);
            auc += (recall - prev_recall) * 0.5 * (pb + prev_pbar);
            prev_recall = recall;
            prev_pbar = pb;
        }
    }
    curve.auc = auc;
    return curve;
}

std::pair<MaybeCorrelation, MaybeCorrelation> cco_cci(const ScalarField& resp,
                                                      const AgreementMap& agreement,
                                                      const std::optional<BinaryMask>& roi) {
    require_same_grid(resp.grid(), agreement.grid, "cco_cci");
    if (roi) require_same_grid(resp.grid(), roi->grid(), "cco_cci ROI");
    resp.require_finite("detector response");

    std::vector<double> obj_resp, obj_agree, all_resp, all_agree;
    for (std::size_t i = 0; i < resp.size(); ++i) {
        if (roi && !roi->at(i)) continue;
        const double a = static_cast<double>(agreement.counts[i]);
        all_resp.push_back(resp.at(i));
        all_agree.push_back(a);
        if (agreement.counts[i] > 0) {
            obj_resp.push_back(resp.at(i));
            obj_agree.push_back(a);
        }
    }
    if (obj_resp.empty()) throw DataError("cco_cci: no pixel was marked by any annotator");

    const auto correlate = [](const std::vector<double>& xs,
                              const std::vector<double>& ys) -> MaybeCorrelation {
        MaybeCorrelation out;
        try {
            out.corr = pearson(xs, ys);
            out.defined = true;
        } catch (const UndefinedCorrelationError&) {
            out.defined = false;
        }
        return out;
    };
    return {correlate(obj_resp, obj_agree), correlate(all_resp, all_agree)};
}

RankingTable rank_detectors(const std::vector<std::pair<std::string, ScalarField>>& responses,
                            const std::vector<std::pair<std::string, BinaryMask>>& gts,
                            double pi1, double pi2, double phi_override,
                            const MatchTolerance& tol, const std::optional<BinaryMask>& roi,
                            const std::vector<Rect>& extents, const SweepSpec& sweep) {
    if (responses.empty()) throw DataError("rank_detectors: no detector responses");
    if (gts.empty()) throw DataError("rank_detectors: no ground truths");

    RankingTable table;
    for (const auto& [gt_name, gt] : gts) {
        const double phi = phi_override > 0.0 ? phi_override : gt_skew_ratio(gt, roi);
        const SkewRange skew(pi1, pi2, phi);

        std::vector<std::pair<std::string, double>> scored;
        scored.reserve(responses.size());
        for (const auto& [det_name, resp] : responses)
            scored.emplace_back(det_name,
                                pr_curve(resp, gt, skew, tol, roi, extents, sweep).auc);
        std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });

        GtRanking ranking;
        ranking.gt_name = gt_name;
        for (std::size_t i = 0; i < scored.size(); ++i) {
            ranking.detector_order.push_back(scored[i].first);
            ranking.auc.push_back(scored[i].second);
            if (i > 0 && scored[i].second == scored[i - 1].second) ranking.has_ties = true;
        }
        table.per_gt.push_back(std::move(ranking));
    }

    // Group ground truths by the ordering they induce, in first-seen order.
    std::map<std::vector<std::string>, std::size_t> seen;
    for (const GtRanking& r : table.per_gt) {
        const auto it = seen.find(r.detector_order);
        if (it == seen.end()) {
            seen.emplace(r.detector_order, table.groups.size());
            table.groups.push_back({{r.gt_name}, r.detector_order});
        } else {
            table.groups[it->second].gt_names.push_back(r.gt_name);
        }
    }
    return table;
}

double DetectorBounds::auc_min() const { return std::min(lower.auc, upper.auc); }
double DetectorBounds::auc_max() const { return std::max(lower.auc, upper.auc); }

DetectorBounds performance_bounds(const ScalarField& resp, const AnnotationStack& stack,
                                  double pi1, double pi2, double phi_override,
                                  const MatchTolerance& tol, const std::vector<Rect>& extents,
                                  const SweepSpec& sweep) {
    const BinaryMask any = any_gt(stack);
    const BinaryMask upper_gt = three_quarter_gt(stack);

    const auto curve_for = [&](const BinaryMask& gt) {
        const double phi = phi_override > 0.0 ? phi_override : gt_skew_ratio(gt, stack.roi());
        return pr_curve(resp, gt, SkewRange(pi1, pi2, phi), tol, stack.roi(), extents, sweep);
    };
    DetectorBounds bounds;
    bounds.lower = curve_for(any);
    bounds.upper = curve_for(upper_gt);
    return bounds;
}

double interval_overlap(const DetectorBounds& a, const DetectorBounds& b) {
    const double lo = std::max(a.auc_min(), b.auc_min());
    const double hi = std::min(a.auc_max(), b.auc_max());
    const double inter = std::max(0.0, hi - lo);
    const double uni = std::max(a.auc_max(), b.auc_max()) - std::min(a.auc_min(), b.auc_min());
    if (uni < 1e-15) return 1.0;
    return inter / uni;
}

}  // namespace gteval
