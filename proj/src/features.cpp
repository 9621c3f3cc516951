#include "gteval/features.hpp"

namespace gteval {

namespace {

std::vector<double> roi_samples(const std::vector<double>& values,
                                const std::optional<BinaryMask>& roi) {
    if (!roi) return values;
    std::vector<double> out;
    out.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        if (roi->at(i)) out.push_back(values[i]);
    return out;
}

FeatureCorrelation correlate(std::string name, const std::vector<double>& feature,
                             const std::vector<double>& agreement,
                             const std::optional<BinaryMask>& roi) {
    FeatureCorrelation row;
    row.feature = std::move(name);
    const std::vector<double> xs = roi_samples(feature, roi);
    const std::vector<double> ys = roi_samples(agreement, roi);
    try {
        row.corr = pearson(xs, ys);
        row.defined = true;
    } catch (const UndefinedCorrelationError&) {
        row.defined = false;
    }
    return row;
}

}  // namespace

std::vector<FeatureCorrelation> feature_agreement_report(const ColorImage& img,
                                                         const AgreementMap& agreement,
                                                         const std::optional<BinaryMask>& roi) {
    require_same_grid(img.grid(), agreement.grid, "feature_agreement_report");
    if (roi) require_same_grid(img.grid(), roi->grid(), "feature_agreement_report ROI");

    std::vector<double> agreement_values(agreement.counts.begin(), agreement.counts.end());
    const ScalarField agreement_field(agreement.grid, agreement_values);

    std::vector<FeatureCorrelation> rows;
    const ScalarField intensity = to_intensity(img);
    rows.push_back(correlate("intensity", intensity.values(), agreement_values, roi));

    const ScalarField tone = lightness(img);
    const ScalarField contrast = michelson_contrast(tone);
    const ScalarField agreement_max = window_max(agreement_field);
    rows.push_back(correlate("contrast", contrast.values(), agreement_max.values(), roi));

    for (const char* name : {"red", "green", "blue", "nir"})
        if (img.has(name))
            rows.push_back(correlate(name, img.channel(name), agreement_values, roi));
    return rows;
}

}  // namespace gteval
