#include "gteval/color.hpp"

#include <algorithm>
#include <cmath>

namespace gteval {

ColorImage::ColorImage(ImageGrid grid,
                       std::vector<std::pair<std::string, std::vector<double>>> channels)
    : grid_(grid), channels_(std::move(channels)) {
    if (channels_.empty()) throw DataError("ColorImage: at least one channel required");
    for (const auto& [name, values] : channels_) {
        if (values.size() != grid_.pixel_count())
            throw DimensionError("ColorImage: channel '" + name + "' does not match grid");
    }
}

ColorImage ColorImage::grayscale(ImageGrid grid, std::vector<double> values) {
    return ColorImage(grid, {{"gray", std::move(values)}});
}

ColorImage ColorImage::rgb(ImageGrid grid, std::vector<double> r, std::vector<double> g,
                           std::vector<double> b) {
    return ColorImage(grid, {{"red", std::move(r)}, {"green", std::move(g)},
                             {"blue", std::move(b)}});
}

bool ColorImage::has(const std::string& name) const {
    for (const auto& [n, v] : channels_)
        if (n == name) return true;
    return false;
}

const std::vector<double>& ColorImage::channel(const std::string& name) const {
    for (const auto& [n, v] : channels_)
        if (n == name) return v;
    throw DataError("ColorImage: missing channel '" + name + "'");
}

void ColorImage::add_channel(const std::string& name, std::vector<double> values) {
    if (has(name)) throw DataError("ColorImage: duplicate channel '" + name + "'");
    if (values.size() != grid_.pixel_count())
        throw DimensionError("ColorImage: channel '" + name + "' does not match grid");
    channels_.emplace_back(name, std::move(values));
}

ScalarField to_intensity(const ColorImage& img) {
    if (img.is_grayscale())
        return ScalarField(img.grid(), img.channel("gray"));
    const auto& r = img.channel("red");
    const auto& g = img.channel("green");
    const auto& b = img.channel("blue");
    std::vector<double> out(img.grid().pixel_count());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = 0.2989 * r[i] + 0.5870 * g[i] + 0.1140 * b[i];
    return ScalarField(img.grid(), std::move(out));
}

namespace {

double srgb_to_linear(double c8) {
    const double c = c8 / 255.0;
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double luminance_to_lstar(double y) {
    // D65 white: Y/Yn with Yn = 1 for linear-light inputs in [0, 1].
    constexpr double kDelta = 6.0 / 29.0;
    const double f = y > kDelta * kDelta * kDelta
                         ? std::cbrt(y)
                         : y / (3.0 * kDelta * kDelta) + 4.0 / 29.0;
    return 116.0 * f - 16.0;
}

}  // namespace

ScalarField lightness(const ColorImage& img) {
    if (img.is_grayscale())
        return to_intensity(img);
    const auto& r = img.channel("red");
    const auto& g = img.channel("green");
    const auto& b = img.channel("blue");
    std::vector<double> out(img.grid().pixel_count());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double y = 0.2126729 * srgb_to_linear(r[i]) +
                         0.7151522 * srgb_to_linear(g[i]) +
                         0.0721750 * srgb_to_linear(b[i]);
        out[i] = luminance_to_lstar(y);
    }
    return ScalarField(img.grid(), std::move(out));
}

namespace {

template <typename Reduce>
ScalarField window_scan(const ScalarField& field, int window, Reduce reduce) {
    if (window < 1 || window % 2 == 0)
        throw ArgumentError("window size must be a positive odd integer");
    const ImageGrid& g = field.grid();
    const int half = window / 2;
    ScalarField out(g);
    for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x) {
            const int x0 = std::max(0, x - half), x1 = std::min(g.width - 1, x + half);
            const int y0 = std::max(0, y - half), y1 = std::min(g.height - 1, y + half);
            double lo = field.at(x0, y0), hi = lo;
            for (int yy = y0; yy <= y1; ++yy)
                for (int xx = x0; xx <= x1; ++xx) {
                    const double v = field.at(xx, yy);
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            out.set(x, y, reduce(lo, hi));
        }
    return out;
}

}  // namespace

ScalarField michelson_contrast(const ScalarField& tone, int window) {
    for (double v : tone.values())
        if (v < 0.0)
            throw ArgumentError("michelson_contrast: tone values must be non-negative");
    return window_scan(tone, window, [](double lo, double hi) {
        const double denom = hi + lo;
        return denom == 0.0 ? 0.0 : (hi - lo) / denom;
    });
}

ScalarField window_max(const ScalarField& field, int window) {
    return window_scan(field, window, [](double, double hi) { return hi; });
}

}  // namespace gteval
