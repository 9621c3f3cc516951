#include "gteval/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gteval {

BinaryMask binarize(const SoftLabelMap& soft, double threshold) {
    BinaryMask out(soft.grid);
    for (std::size_t i = 0; i < soft.posterior.size(); ++i)
        out.set(i, soft.posterior[i] >= threshold);
    return out;
}

BinaryMask fuse_vote(const AnnotationStack& stack, double tau) {
    return threshold_consensus(agreement_map(stack), ConsensusParams(tau));
}

ExclVoteResult fuse_excl_vote(const AnnotationStack& stack, double tau) {
    ExclVoteResult out{fuse_vote(stack, tau), {}, false};
    if (stack.n() < 3) {
        out.fallback = true;
        return out;
    }
    const OutlierResult outliers = detect_outliers(pairwise_f1(stack));
    if (outliers.outlier_ids.empty()) return out;

    std::vector<int> keep;
    for (int i = 0; i < stack.n(); ++i) {
        const std::string& id = stack.annotator(i).id;
        if (std::find(outliers.outlier_ids.begin(), outliers.outlier_ids.end(), id) ==
            outliers.outlier_ids.end())
            keep.push_back(i);
    }
    if (keep.size() < 2) {
        out.fallback = true;
        return out;
    }
    out.mask = fuse_vote(stack.subset(keep), tau);
    out.excluded_ids = outliers.outlier_ids;
    return out;
}

namespace {

constexpr double kParamClamp = 1e-6;

struct VotePattern {
    std::uint64_t bits = 0;
    std::uint64_t count = 0;
};

// Run-length encoding of the per-pixel rater-vote bitmasks inside the
// ROI. The EM updates depend on pixels only through these patterns, so
// iterations run over the (much smaller) pattern list.
struct PatternIndex {
    std::vector<VotePattern> patterns;
    std::vector<std::uint32_t> pixel_to_pattern;  // UINT32_MAX outside the ROI
    std::uint64_t roi_pixels = 0;
};

PatternIndex build_patterns(const AnnotationStack& stack) {
    const std::size_t pixels = stack.grid().pixel_count();
    const int n = stack.n();
    std::vector<std::uint64_t> raw(pixels, 0);
    for (int j = 0; j < n; ++j) {
        const auto& labels = stack.annotator(j).mask.labels();
        const std::uint64_t bit = std::uint64_t{1} << j;
        for (std::size_t i = 0; i < pixels; ++i)
            if (labels[i]) raw[i] |= bit;
    }

    std::vector<std::uint64_t> sorted;
    sorted.reserve(pixels);
    for (std::size_t i = 0; i < pixels; ++i)
        if (stack.in_roi(i)) sorted.push_back(raw[i]);
    std::sort(sorted.begin(), sorted.end());

    PatternIndex index;
    index.roi_pixels = sorted.size();
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        index.patterns.push_back({sorted[i], static_cast<std::uint64_t>(j - i)});
        i = j;
    }

    index.pixel_to_pattern.assign(pixels, UINT32_MAX);
    for (std::size_t i = 0; i < pixels; ++i) {
        if (!stack.in_roi(i)) continue;
        const auto it = std::lower_bound(
            index.patterns.begin(), index.patterns.end(), raw[i],
            [](const VotePattern& p, std::uint64_t v) { return p.bits < v; });
        index.pixel_to_pattern[i] =
            static_cast<std::uint32_t>(it - index.patterns.begin());
    }
    return index;
}

double clamp_param(double v) { return std::clamp(v, kParamClamp, 1.0 - kParamClamp); }

}  // namespace

StapleResult fuse_staple(const AnnotationStack& stack, const StapleConfig& cfg) {
    const int n = stack.n();
    if (n < 2) throw DataError("fuse_staple: need at least 2 annotators");
    if (n > 64) throw ArgumentError("fuse_staple: more than 64 annotators is unsupported");
    if (!(cfg.init_p > 0.0 && cfg.init_p < 1.0) || !(cfg.init_q > 0.0 && cfg.init_q < 1.0))
        throw ArgumentError("fuse_staple: initial p and q must lie in (0, 1)");
    if (!(cfg.tol > 0.0) || cfg.max_iters < 1)
        throw ArgumentError("fuse_staple: tol must be positive and max_iters >= 1");

    const PatternIndex index = build_patterns(stack);

    // Empirical prior: mean positive fraction of the annotators.
    double prior = cfg.prior;
    if (prior <= 0.0) {
        double acc = 0.0;
        for (const VotePattern& pat : index.patterns)
            acc += static_cast<double>(std::popcount(pat.bits)) *
                   static_cast<double>(pat.count);
        prior = acc / (static_cast<double>(index.roi_pixels) * static_cast<double>(n));
    }
    if (!(prior > 0.0 && prior < 1.0))
        throw DataError("fuse_staple: need at least one marked and one unmarked pixel");

    const double log_prior = std::log(prior);
    const double log_one_minus_prior = std::log1p(-prior);

    std::vector<double> p(static_cast<std::size_t>(n), clamp_param(cfg.init_p));
    std::vector<double> q(static_cast<std::size_t>(n), clamp_param(cfg.init_q));
    std::vector<double> w(index.patterns.size(), 0.0);

    StapleResult result;
    result.prior = prior;

    const auto e_step = [&]() -> double {
        std::vector<double> lp(static_cast<std::size_t>(n)), l1p(static_cast<std::size_t>(n));
        std::vector<double> lq(static_cast<std::size_t>(n)), l1q(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            lp[static_cast<std::size_t>(j)] = std::log(p[static_cast<std::size_t>(j)]);
            l1p[static_cast<std::size_t>(j)] = std::log1p(-p[static_cast<std::size_t>(j)]);
            lq[static_cast<std::size_t>(j)] = std::log(q[static_cast<std::size_t>(j)]);
            l1q[static_cast<std::size_t>(j)] = std::log1p(-q[static_cast<std::size_t>(j)]);
        }
        double ll = 0.0;
        for (std::size_t k = 0; k < index.patterns.size(); ++k) {
            const std::uint64_t bits = index.patterns[k].bits;
            double a = log_prior;
            double b = log_one_minus_prior;
            for (int j = 0; j < n; ++j) {
                if (bits >> j & 1) {
                    a += lp[static_cast<std::size_t>(j)];
                    b += l1q[static_cast<std::size_t>(j)];
                } else {
                    a += l1p[static_cast<std::size_t>(j)];
                    b += lq[static_cast<std::size_t>(j)];
                }
            }
            w[k] = 1.0 / (1.0 + std::exp(b - a));
            const double hi = std::max(a, b), lo = std::min(a, b);
            ll += static_cast<double>(index.patterns[k].count) *
                  (hi + std::log1p(std::exp(lo - hi)));
        }
        return ll;
    };

    int iter = 0;
    for (iter = 1; iter <= cfg.max_iters; ++iter) {
        result.log_likelihood.push_back(e_step());

        double delta = 0.0;
        for (int j = 0; j < n; ++j) {
            double num_p = 0.0, den_p = 0.0, num_q = 0.0, den_q = 0.0;
            for (std::size_t k = 0; k < index.patterns.size(); ++k) {
                const double c = static_cast<double>(index.patterns[k].count);
                const bool votes = index.patterns[k].bits >> j & 1;
                const double wk = w[k];
                den_p += c * wk;
                den_q += c * (1.0 - wk);
                if (votes) num_p += c * wk;
                else num_q += c * (1.0 - wk);
            }
            const std::size_t sj = static_cast<std::size_t>(j);
            const double new_p = den_p > 0.0 ? clamp_param(num_p / den_p) : p[sj];
            const double new_q = den_q > 0.0 ? clamp_param(num_q / den_q) : q[sj];
            delta = std::max(delta, std::fabs(new_p - p[sj]) + std::fabs(new_q - q[sj]));
            p[sj] = new_p;
            q[sj] = new_q;
        }
        if (delta < cfg.tol) {
            result.converged = true;
            break;
        }
    }
    result.iterations = std::min(iter, cfg.max_iters);

    // Final posterior under the final parameters.
    result.log_likelihood.push_back(e_step());

    result.posterior.grid = stack.grid();
    result.posterior.posterior.assign(stack.grid().pixel_count(), 0.0);
    for (std::size_t i = 0; i < index.pixel_to_pattern.size(); ++i)
        if (index.pixel_to_pattern[i] != UINT32_MAX)
            result.posterior.posterior[i] = w[index.pixel_to_pattern[i]];

    for (const Annotation& a : stack.annotations()) result.performance.ids.push_back(a.id);
    result.performance.sensitivity = p;
    result.performance.specificity = q;
    return result;
}

namespace {

double score_against(const BinaryMask& mask, const BinaryMask& estimate,
                     const std::optional<BinaryMask>& roi, SimpleConfig::Score score) {
    const ConfusionCounts c = confusion(mask, estimate, roi);
    if (score == SimpleConfig::Score::kappa)
        return cohen_kappa(c).value_or(0.0);
    const double denom = 2.0 * static_cast<double>(c.tp) + static_cast<double>(c.fp) +
                         static_cast<double>(c.fn);
    return denom > 0.0 ? 2.0 * static_cast<double>(c.tp) / denom : 0.0;
}

}  // namespace

SimpleResult fuse_simple(const AnnotationStack& stack, const SimpleConfig& cfg) {
    if (stack.n() < 2) throw DataError("fuse_simple: need at least 2 annotators");
    if (cfg.drop_margin <= 0.0 || cfg.max_rounds < 1)
        throw ArgumentError("fuse_simple: drop_margin must be positive and max_rounds >= 1");

    std::vector<int> retained(static_cast<std::size_t>(stack.n()));
    std::iota(retained.begin(), retained.end(), 0);

    SimpleResult result;
    result.mask = fuse_vote(stack, cfg.tau);

    for (result.rounds = 1; result.rounds <= cfg.max_rounds; ++result.rounds) {
        std::vector<double> scores;
        scores.reserve(retained.size());
        for (int i : retained)
            scores.push_back(score_against(stack.annotator(i).mask, result.mask, stack.roi(),
                                           cfg.score));
        const MeanStd ms = mean_std(scores, false);
        const double threshold = ms.mean - cfg.drop_margin * ms.stddev;

        std::vector<int> keep;
        for (std::size_t k = 0; k < retained.size(); ++k)
            if (scores[k] >= threshold) keep.push_back(retained[k]);

        if (keep.size() == retained.size()) break;  // stable
        if (keep.size() < 2) {
            result.stopped_before_drop = true;
            break;
        }
        retained = std::move(keep);
        result.mask = fuse_vote(stack.subset(retained), cfg.tau);
    }
    result.rounds = std::min(result.rounds, cfg.max_rounds);

    for (int i : retained) result.retained_ids.push_back(stack.annotator(i).id);
    return result;
}

}  // namespace gteval
