#include "gteval/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gteval {

double ImageGrid::diagonal() const {
    return std::hypot(static_cast<double>(width), static_cast<double>(height));
}

BinaryMask::BinaryMask(ImageGrid grid, std::vector<std::uint8_t> labels)
    : grid_(grid), labels_(std::move(labels)) {
    if (labels_.size() != grid_.pixel_count())
        throw DimensionError("BinaryMask: label buffer does not match grid");
    for (std::uint8_t v : labels_)
        if (v > 1) throw ArgumentError("BinaryMask: labels must be 0 or 1");
}

std::size_t BinaryMask::count() const {
    return static_cast<std::size_t>(
        std::count(labels_.begin(), labels_.end(), std::uint8_t{1}));
}

ScalarField::ScalarField(ImageGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.pixel_count())
        throw DimensionError("ScalarField: value buffer does not match grid");
}

void ScalarField::require_finite(const char* what) const {
    for (double v : values_)
        if (!std::isfinite(v))
            throw DataError(std::string(what) + ": non-finite value in field");
}

}  // namespace gteval
