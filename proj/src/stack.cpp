#include "gteval/stack.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace gteval {

AnnotationStack::AnnotationStack(std::vector<Annotation> annotations,
                                 std::optional<BinaryMask> roi)
    : annotations_(std::move(annotations)), roi_(std::move(roi)) {
    if (annotations_.empty())
        throw DataError("AnnotationStack: at least one annotation is required");
    grid_ = annotations_.front().mask.grid();
    std::set<std::string> ids;
    for (const Annotation& a : annotations_) {
        require_same_grid(grid_, a.mask.grid(), "AnnotationStack");
        if (!ids.insert(a.id).second)
            throw DataError("AnnotationStack: duplicate annotator id '" + a.id + "'");
    }
    if (roi_) {
        require_same_grid(grid_, roi_->grid(), "AnnotationStack ROI");
        domain_size_ = roi_->count();
        if (domain_size_ == 0)
            throw DataError("AnnotationStack: ROI excludes every pixel");
    } else {
        domain_size_ = grid_.pixel_count();
    }
}

AnnotationStack AnnotationStack::subset(const std::vector<int>& keep_indices) const {
    std::vector<Annotation> kept;
    kept.reserve(keep_indices.size());
    for (int j : keep_indices) {
        if (j < 0 || j >= n()) throw ArgumentError("AnnotationStack::subset: index out of range");
        kept.push_back(annotations_[static_cast<std::size_t>(j)]);
    }
    return AnnotationStack(std::move(kept), roi_);
}

std::size_t AgreementMap::marked_count() const {
    return static_cast<std::size_t>(
        std::count_if(counts.begin(), counts.end(), [](std::int32_t c) { return c > 0; }));
}

AgreementMap agreement_map(const AnnotationStack& stack) {
    AgreementMap out;
    out.grid = stack.grid();
    out.n_annotators = stack.n();
    out.domain_size = stack.domain_size();
    out.counts.assign(out.grid.pixel_count(), 0);
    for (const Annotation& a : stack.annotations()) {
        const auto& labels = a.mask.labels();
        for (std::size_t i = 0; i < labels.size(); ++i)
            out.counts[i] += labels[i];
    }
    if (stack.roi()) {
        const auto& roi = stack.roi()->labels();
        for (std::size_t i = 0; i < roi.size(); ++i)
            if (roi[i] == 0) out.counts[i] = 0;
    }
    return out;
}

double agreement_fraction(const AgreementMap& agreement, int n) {
    if (n < 1 || n > agreement.n_annotators)
        throw ArgumentError("agreement_fraction: n must be in [1, N]");
    std::size_t marked = 0;
    std::size_t at_least_n = 0;
    for (std::int32_t c : agreement.counts) {
        if (c > 0) {
            ++marked;
            if (c >= n) ++at_least_n;
        }
    }
    if (marked == 0)
        throw DataError("agreement_fraction: no pixel was marked by any annotator");
    return static_cast<double>(at_least_n) / static_cast<double>(marked);
}

std::vector<double> agreement_curve(const AgreementMap& agreement) {
    const int n_max = agreement.n_annotators;
    std::vector<std::size_t> hist(static_cast<std::size_t>(n_max) + 1, 0);
    for (std::int32_t c : agreement.counts)
        if (c > 0) ++hist[static_cast<std::size_t>(c)];
    std::size_t marked = 0;
    for (int n = 1; n <= n_max; ++n) marked += hist[static_cast<std::size_t>(n)];
    if (marked == 0)
        throw DataError("agreement_curve: no pixel was marked by any annotator");

    std::vector<double> curve(static_cast<std::size_t>(n_max));
    std::size_t tail = 0;
    for (int n = n_max; n >= 1; --n) {
        tail += hist[static_cast<std::size_t>(n)];
        curve[static_cast<std::size_t>(n) - 1] =
            static_cast<double>(tail) / static_cast<double>(marked);
    }
    return curve;
}

double smyth_bound(const AgreementMap& agreement) {
    const std::int64_t n = agreement.n_annotators;
    std::int64_t acc = 0;
    for (std::int32_t c : agreement.counts) {
        // Pixels outside the ROI carry count 0 and contribute nothing.
        const std::int64_t a = c;
        acc += n - std::max(a, n - a);
    }
    return static_cast<double>(acc) /
           (static_cast<double>(agreement.domain_size) * static_cast<double>(n));
}

BinaryMask threshold_consensus(const AgreementMap& agreement, ConsensusParams params) {
    // Inclusive A/N >= tau, with a guard against floating-point noise in
    // tau * N so exact ties (even N, tau = 0.5) count as consensus.
    const auto threshold = static_cast<std::int32_t>(
        std::ceil(params.tau * agreement.n_annotators - 1e-9));
    BinaryMask out(agreement.grid);
    for (std::size_t i = 0; i < agreement.counts.size(); ++i)
        out.set(i, agreement.counts[i] >= threshold);
    return out;
}

}  // namespace gteval
