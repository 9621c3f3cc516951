#ifndef GTEVAL_STACK_HPP
#define GTEVAL_STACK_HPP

#include <optional>
#include <string>
#include <vector>

#include "gteval/grid.hpp"

namespace gteval {

struct Annotation {
    std::string id;
    BinaryMask mask;
};

/// N aligned binary annotations over one grid, with annotator identities
/// and an optional region-of-interest mask (1 = pixel takes part in the
/// analysis). Immutable after construction; all analysis operations treat
/// pixels outside the ROI as absent.
class AnnotationStack {
public:
    AnnotationStack(std::vector<Annotation> annotations,
                    std::optional<BinaryMask> roi = std::nullopt);

    const ImageGrid& grid() const { return grid_; }
    int n() const { return static_cast<int>(annotations_.size()); }
    const std::vector<Annotation>& annotations() const { return annotations_; }
    const Annotation& annotator(int j) const { return annotations_[static_cast<std::size_t>(j)]; }
    const std::optional<BinaryMask>& roi() const { return roi_; }

    bool in_roi(std::size_t i) const { return !roi_ || roi_->at(i) != 0; }
    bool in_roi(int x, int y) const { return !roi_ || roi_->at(x, y) != 0; }

    /// Number of pixels taking part in the analysis (X*Y without an ROI).
    std::size_t domain_size() const { return domain_size_; }

    /// Stack restricted to a subset of annotators (same grid and ROI).
    AnnotationStack subset(const std::vector<int>& keep_indices) const;

private:
    ImageGrid grid_;
    std::vector<Annotation> annotations_;
    std::optional<BinaryMask> roi_;
    std::size_t domain_size_ = 0;
};

/// Per-pixel count of annotators that marked the pixel. Counts are zero
/// outside the ROI; domain_size carries the ROI pixel count used as the
/// normalizer of the Smyth bound.
struct AgreementMap {
    ImageGrid grid;
    std::vector<std::int32_t> counts;
    int n_annotators = 0;
    std::size_t domain_size = 0;

    std::int32_t at(int x, int y) const { return counts[grid.index(x, y)]; }
    std::int32_t at(std::size_t i) const { return counts[i]; }

    /// |C|, the number of pixels marked by at least one annotator.
    std::size_t marked_count() const;
};

struct ConsensusParams {
    double tau = 0.5;

    explicit ConsensusParams(double t) : tau(t) {
        if (!(t > 0.0 && t <= 1.0))
            throw ArgumentError("ConsensusParams: tau must be in (0, 1]");
    }
};

/// A(x,y) = sum_n M_n(x,y), restricted to the ROI.
AgreementMap agreement_map(const AnnotationStack& stack);

/// |{A >= n}| / |{A > 0}| for 1 <= n <= N. Throws DataError when no pixel
/// is marked, ArgumentError when n is out of range.
double agreement_fraction(const AgreementMap& agreement, int n);

/// agreement_fraction for n = 1..N in one pass.
std::vector<double> agreement_curve(const AgreementMap& agreement);

/// Lower bound on the mean annotator error rate relative to the unknown
/// gold standard: (1 / (|domain| * N)) * sum over domain of
/// N - max{A, N - A}. Lies in [0, 0.5].
double smyth_bound(const AgreementMap& agreement);

/// kappa(x,y) = 1 iff A(x,y) / N >= tau (inclusive comparison).
BinaryMask threshold_consensus(const AgreementMap& agreement, ConsensusParams params);

}  // namespace gteval

#endif
