#ifndef GTEVAL_IO_HPP
#define GTEVAL_IO_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gteval/color.hpp"
#include "gteval/eval.hpp"
#include "gteval/grid.hpp"
#include "gteval/stack.hpp"

namespace gteval {
namespace io {

/// Binary masks travel as PGM (P5 written, P5/P2 read; any nonzero
/// sample loads as 1, writes use 0/255).
BinaryMask load_mask(const std::string& path);
void write_mask(const BinaryMask& mask, const std::string& path);

/// Detector responses: PGM (samples divided by maxval) or CSV with an
/// "X,Y" header line followed by one value per line, row-major. CSV
/// values already inside [0, 1] load as-is, otherwise they are min-max
/// rescaled to [0, 1].
ScalarField load_response(const std::string& path);

/// Images: P5/P2 loads as grayscale, P6/P3 as RGB. Sample values are
/// rescaled to [0, 255] for sources wider than 8 bits.
ColorImage load_image(const std::string& path);
void write_image(const ColorImage& img, const std::string& path);

/// Agreement counts as a PGM with maxval N (16-bit beyond 255).
void write_counts(const AgreementMap& agreement, const std::string& path);

/// Posterior map in [0, 1] as a 16-bit PGM (sample = round(v * 65535)).
void write_posterior(const ScalarField& posterior, const std::string& path);

/// Description of one annotated image: annotator masks, optional raw
/// image, near-infrared plane, ROI, and composite sub-image extents.
struct StackManifest {
    std::string image_path;  // empty = absent
    std::string nir_path;
    std::string roi_path;
    std::vector<std::pair<std::string, std::string>> annotations;  // (id, mask path)
    std::vector<Rect> extents;

    static StackManifest load(const std::string& path);
    void save(const std::string& path) const;
};

struct LoadedStack {
    AnnotationStack stack;
    std::optional<ColorImage> image;
    std::vector<Rect> extents;
};

/// Resolves every path in the manifest relative to the manifest's own
/// directory, loads the masks, and validates that extents (when present)
/// tile the grid without overlap.
LoadedStack load_stack(const StackManifest& manifest, const std::string& manifest_dir);

LoadedStack load_stack_file(const std::string& manifest_path);

/// Directory part of a path ("." when none).
std::string parent_dir(const std::string& path);

/// path if absolute, otherwise dir/path.
std::string join_path(const std::string& dir, const std::string& path);

}  // namespace io
}  // namespace gteval

#endif
