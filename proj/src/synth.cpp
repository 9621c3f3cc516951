#include "gteval/synth.hpp"

#include <algorithm>
#include <cmath>

#include "gteval/morphology.hpp"

namespace gteval {
namespace synth {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

void draw_segment(BinaryMask& mask, int x0, int y0, int x1, int y1) {
    // Bresenham, 8-connected.
    const int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
    const int sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    for (;;) {
        if (mask.grid().contains(x0, y0)) mask.set(x0, y0, true);
        if (x0 == x1 && y0 == y1) break;
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x0 += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y0 += sy;
        }
    }
}

void draw_disc(BinaryMask& mask, int cx, int cy, double radius) {
    const int r = static_cast<int>(std::ceil(radius));
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
            if (static_cast<double>(dx) * dx + static_cast<double>(dy) * dy > radius * radius)
                continue;
            if (mask.grid().contains(cx + dx, cy + dy)) mask.set(cx + dx, cy + dy, true);
        }
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t scene_seed, std::uint64_t profile_seed) {
    return splitmix64(scene_seed ^ splitmix64(profile_seed));
}

GoldScene make_scene(const SceneSpec& spec) {
    if (spec.width < 32 || spec.height < 32)
        throw ArgumentError("make_scene: scenes start at 32x32");
    const ImageGrid grid(spec.width, spec.height);
    Rng rng(spec.seed);

    BinaryMask gold(grid);
    if (spec.geometry == Geometry::linear) {
        const int count = spec.object_count > 0
                              ? spec.object_count
                              : std::max(2, static_cast<int>(grid.pixel_count() / 10000));
        for (int s = 0; s < count; ++s) {
            int x = rng.uniform_int(0, grid.width - 1);
            int y = rng.uniform_int(0, grid.height - 1);
            const int hop = std::max(8, grid.width / 4);
            for (int wp = 0; wp < spec.stroke_waypoints; ++wp) {
                const int nx = std::clamp(x + rng.uniform_int(-hop, hop), 0, grid.width - 1);
                const int ny = std::clamp(y + rng.uniform_int(-hop, hop), 0, grid.height - 1);
                draw_segment(gold, x, y, nx, ny);
                x = nx;
                y = ny;
            }
        }
        // Unit-width construction: a thinning pass resolves the rare
        // junction thickenings where strokes touch.
        gold = thin(gold);
    } else {
        const double r = spec.blob_radius;
        const int count =
            spec.object_count > 0
                ? spec.object_count
                : std::max(1, static_cast<int>(std::lround(
                                  0.05 * static_cast<double>(grid.pixel_count()) /
                                  (3.14159265358979 * r * r))));
        for (int s = 0; s < count; ++s) {
            const int cx = rng.uniform_int(0, grid.width - 1);
            const int cy = rng.uniform_int(0, grid.height - 1);
            const double radius = r * (0.7 + 0.6 * rng.next_double());
            draw_disc(gold, cx, cy, radius);
        }
    }
    if (gold.count() == 0) {
        // Degenerate draw (tiny grids): guarantee a nonempty gold.
        gold.set(grid.width / 2, grid.height / 2, true);
    }

    // Render: dark objects on a brighter noisy background, mild channel
    // separation so colour rows of the feature report are exercised.
    std::vector<double> red(grid.pixel_count()), green(grid.pixel_count()),
        blue(grid.pixel_count());
    for (std::size_t i = 0; i < grid.pixel_count(); ++i) {
        const double base = gold.at(i) ? 60.0 : 150.0;
        const double n1 = (rng.next_double() - 0.5) * 30.0;
        const double n2 = (rng.next_double() - 0.5) * 10.0;
        red[i] = std::clamp(base + n1 + n2, 0.0, 255.0);
        green[i] = std::clamp(0.95 * (base + n1) - n2, 0.0, 255.0);
        blue[i] = std::clamp(1.05 * (base + n1), 0.0, 255.0);
    }

    GoldScene scene{grid, std::move(gold), spec.geometry,
                    ColorImage::rgb(grid, std::move(red), std::move(green), std::move(blue)),
                    spec.seed};
    return scene;
}

BinaryMask sample_annotation(const GoldScene& scene, const RaterProfile& profile) {
    if (!(profile.p > 0.0 && profile.p <= 1.0) || !(profile.q > 0.0 && profile.q <= 1.0))
        throw ArgumentError("sample_annotation: p and q must lie in (0, 1]");
    Rng rng(mix_seed(scene.seed, profile.seed));

    BinaryMask base = scene.gold;
    if (profile.dilate_bias > 0) base = dilate(base, profile.dilate_bias);
    if (profile.dilate_bias < 0) base = erode(base, -profile.dilate_bias);

    BinaryMask out(scene.grid);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double u = rng.next_double();
        if (base.at(i))
            out.set(i, u < profile.p);
        else
            out.set(i, u >= profile.q);
    }
    return out;
}

AnnotationStack make_stack(const GoldScene& scene, const std::vector<RaterProfile>& profiles) {
    std::vector<Annotation> annotations;
    annotations.reserve(profiles.size());
    for (std::size_t j = 0; j < profiles.size(); ++j) {
        RaterProfile p = profiles[j];
        if (p.seed == 0) p.seed = j + 1;
        annotations.push_back({"A" + std::to_string(j + 1), sample_annotation(scene, p)});
    }
    return AnnotationStack(std::move(annotations));
}

double true_error(const BinaryMask& mask, const BinaryMask& gold,
                  const std::optional<BinaryMask>& roi) {
    require_same_grid(mask.grid(), gold.grid(), "true_error");
    if (roi) require_same_grid(mask.grid(), roi->grid(), "true_error ROI");
    std::size_t total = 0, wrong = 0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (roi && !roi->at(i)) continue;
        ++total;
        if (mask.at(i) != gold.at(i)) ++wrong;
    }
    return total > 0 ? static_cast<double>(wrong) / static_cast<double>(total) : 0.0;
}

}  // namespace synth
}  // namespace gteval
