#ifndef GTEVAL_MORPHOLOGY_HPP
#define GTEVAL_MORPHOLOGY_HPP

#include "gteval/grid.hpp"

namespace gteval {

/// Skeletonize a mask to unit-width curves (Zhang-Suen style two-subpass
/// thinning, applied sequentially in raster order, followed by a 2x2-block
/// cleanup). Guarantees: output is a subset of the input, connected
/// components stay connected and never vanish, isolated pixels and curve
/// endpoints are preserved, and the operation is idempotent.
BinaryMask thin(const BinaryMask& mask);

/// Morphological dilation by the 3x3 (8-neighbourhood) structuring
/// element, applied `rounds` times.
BinaryMask dilate(const BinaryMask& mask, int rounds = 1);

/// Morphological erosion by the 3x3 structuring element, applied
/// `rounds` times. Pixels on the image border erode unless the mask is
/// treated as padded; the border is treated as background.
BinaryMask erode(const BinaryMask& mask, int rounds = 1);

/// True when no fully-set 2x2 block exists (the unit-width test used by
/// the thinning contract).
bool is_unit_width(const BinaryMask& mask);

/// True when `a` is a pixelwise subset of `b`.
bool is_subset(const BinaryMask& a, const BinaryMask& b);

/// Number of 8-connected components of the foreground.
int component_count(const BinaryMask& mask);

}  // namespace gteval

#endif
