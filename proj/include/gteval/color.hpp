#ifndef GTEVAL_COLOR_HPP
#define GTEVAL_COLOR_HPP

#include <string>
#include <utility>
#include <vector>

#include "gteval/grid.hpp"

namespace gteval {

/// Multi-channel image with named per-pixel planes. Planes from 8-bit
/// sources live in [0, 255]; wider sources are rescaled to that range on
/// load. A grayscale image carries the single channel "gray"; colour
/// images carry "red", "green", "blue" and optionally "nir".
class ColorImage {
public:
    ColorImage(ImageGrid grid, std::vector<std::pair<std::string, std::vector<double>>> channels);

    static ColorImage grayscale(ImageGrid grid, std::vector<double> values);
    static ColorImage rgb(ImageGrid grid, std::vector<double> r, std::vector<double> g,
                          std::vector<double> b);

    const ImageGrid& grid() const { return grid_; }
    bool has(const std::string& name) const;
    const std::vector<double>& channel(const std::string& name) const;
    void add_channel(const std::string& name, std::vector<double> values);

    const std::vector<std::pair<std::string, std::vector<double>>>& channels() const {
        return channels_;
    }

    bool is_grayscale() const { return has("gray"); }
    bool is_color() const { return has("red") && has("green") && has("blue"); }

private:
    ImageGrid grid_;
    std::vector<std::pair<std::string, std::vector<double>>> channels_;
};

/// I = 0.2989 R + 0.5870 G + 0.1140 B; grayscale images pass through.
ScalarField to_intensity(const ColorImage& img);

/// CIELAB L* under sRGB primaries and D65 white, range [0, 100].
/// Grayscale images return the intensity plane unchanged.
ScalarField lightness(const ColorImage& img);

/// Michelson contrast (max - min) / (max + min) over an odd square
/// window (default 3x3), windows clipped at the borders, 0 where
/// max + min = 0. Requires non-negative input.
ScalarField michelson_contrast(const ScalarField& tone, int window = 3);

/// Maximum over the same odd square window; used to compare contrast
/// against agreement taken within the matching neighbourhood.
ScalarField window_max(const ScalarField& field, int window = 3);

}  // namespace gteval

#endif
