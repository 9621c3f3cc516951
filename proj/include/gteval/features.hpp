#ifndef GTEVAL_FEATURES_HPP
#define GTEVAL_FEATURES_HPP

#include <optional>
#include <string>
#include <vector>

#include "gteval/color.hpp"
#include "gteval/stack.hpp"
#include "gteval/stats.hpp"

namespace gteval {

struct FeatureCorrelation {
    std::string feature;
    bool defined = false;                 // false when the sample was constant
    CorrelationResult corr;
};

/// Per-feature Pearson correlation against the agreement map, one sample
/// per ROI pixel. The contrast row is correlated against the agreement
/// maximum taken within the same 3x3 neighbourhood; every other row uses
/// the raw agreement counts. Rows whose sample is constant are reported
/// with defined = false.
std::vector<FeatureCorrelation> feature_agreement_report(const ColorImage& img,
                                                         const AgreementMap& agreement,
                                                         const std::optional<BinaryMask>& roi);

}  // namespace gteval

#endif
