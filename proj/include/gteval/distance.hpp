#ifndef GTEVAL_DISTANCE_HPP
#define GTEVAL_DISTANCE_HPP

#include <vector>

#include "gteval/grid.hpp"

namespace gteval {

/// Squared Euclidean distance from every pixel to the nearest set pixel
/// (two-pass lower-envelope transform). Pixels of an empty mask map to
/// a value larger than any squared grid distance.
std::vector<double> squared_distance_transform(const BinaryMask& mask);

}  // namespace gteval

#endif
