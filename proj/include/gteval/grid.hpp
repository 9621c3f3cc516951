#ifndef GTEVAL_GRID_HPP
#define GTEVAL_GRID_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gteval/error.hpp"

namespace gteval {

/// Pixel lattice shared by every map in one analysis. Coordinates are
/// (x, y) with x in [0, width) and y in [0, height), row-major storage.
struct ImageGrid {
    int width = 0;
    int height = 0;

    ImageGrid() = default;
    ImageGrid(int w, int h) : width(w), height(h) {
        if (w < 1 || h < 1)
            throw ArgumentError("ImageGrid: dimensions must be >= 1");
    }

    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
               static_cast<std::size_t>(x);
    }
    bool contains(int x, int y) const {
        return x >= 0 && x < width && y >= 0 && y < height;
    }
    double diagonal() const;

    friend bool operator==(const ImageGrid& a, const ImageGrid& b) = default;
};

/// One annotator's (or ground truth's) per-pixel object/background labeling.
/// One byte per pixel, values exactly 0 or 1.
class BinaryMask {
public:
    BinaryMask() = default;
    explicit BinaryMask(ImageGrid grid, std::uint8_t fill = 0)
        : grid_(grid), labels_(grid.pixel_count(), fill) {
        if (fill > 1) throw ArgumentError("BinaryMask: labels must be 0 or 1");
    }
    BinaryMask(ImageGrid grid, std::vector<std::uint8_t> labels);

    const ImageGrid& grid() const { return grid_; }
    std::uint8_t at(int x, int y) const { return labels_[grid_.index(x, y)]; }
    std::uint8_t at(std::size_t i) const { return labels_[i]; }
    void set(int x, int y, bool value) { labels_[grid_.index(x, y)] = value ? 1 : 0; }
    void set(std::size_t i, bool value) { labels_[i] = value ? 1 : 0; }

    const std::vector<std::uint8_t>& labels() const { return labels_; }
    std::size_t size() const { return labels_.size(); }

    /// Number of positive pixels.
    std::size_t count() const;

    bool empty_mask() const { return count() == 0; }

    friend bool operator==(const BinaryMask& a, const BinaryMask& b) = default;

private:
    ImageGrid grid_;
    std::vector<std::uint8_t> labels_;
};

/// Per-pixel real-valued map (features, detector responses, posteriors).
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(ImageGrid grid, double fill = 0.0)
        : grid_(grid), values_(grid.pixel_count(), fill) {}
    ScalarField(ImageGrid grid, std::vector<double> values);

    const ImageGrid& grid() const { return grid_; }
    double at(int x, int y) const { return values_[grid_.index(x, y)]; }
    double at(std::size_t i) const { return values_[i]; }
    void set(int x, int y, double v) { values_[grid_.index(x, y)] = v; }
    void set(std::size_t i, double v) { values_[i] = v; }

    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }
    std::size_t size() const { return values_.size(); }

    /// Throws DataError if any value is NaN or infinite.
    void require_finite(const char* what) const;

private:
    ImageGrid grid_;
    std::vector<double> values_;
};

inline void require_same_grid(const ImageGrid& a, const ImageGrid& b, const char* what) {
    if (!(a == b)) throw DimensionError(std::string(what) + ": grid dimensions differ");
}

}  // namespace gteval

#endif
