#ifndef GTEVAL_SYNTH_HPP
#define GTEVAL_SYNTH_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gteval/color.hpp"
#include "gteval/stack.hpp"

namespace gteval {
namespace synth {

/// Deterministic random stream: the standard-specified mt19937_64 engine
/// with explicit value mappings, so identical seeds reproduce identical
/// cohorts on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1): top 53 bits of the next word.
    double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    /// Uniform integer in [lo, hi] (inclusive).
    int uniform_int(int lo, int hi) {
        const double u = next_double();
        const int span = hi - lo + 1;
        int v = lo + static_cast<int>(u * span);
        return v > hi ? hi : v;
    }

private:
    std::mt19937_64 engine_;
};

/// Derived per-annotator stream seed (splitmix64 of the combined seeds).
std::uint64_t mix_seed(std::uint64_t scene_seed, std::uint64_t profile_seed);

/// Annotator error model: a spatial bias (dilate for habitual
/// over-marking, erode for under-marking) followed by a per-pixel
/// Bernoulli channel with sensitivity p and specificity q.
struct RaterProfile {
    double p = 0.95;        // in (0, 1]
    double q = 0.999;       // in (0, 1]
    int dilate_bias = 0;    // pixels; negative erodes
    std::uint64_t seed = 0;
};

enum class Geometry { linear, areal };

struct SceneSpec {
    Geometry geometry = Geometry::areal;
    int width = 256;
    int height = 256;
    std::uint64_t seed = 1;
    int object_count = 0;      // 0 selects a size-based default
    double blob_radius = 10.0; // areal mode
    int stroke_waypoints = 4;  // linear mode
};

struct GoldScene {
    ImageGrid grid;
    BinaryMask gold;
    Geometry geometry = Geometry::areal;
    ColorImage image;
    std::uint64_t seed = 0;
};

/// Deterministic scene with a known gold standard: linear mode draws
/// unit-width random polylines (fissure-like), areal mode filled random
/// blobs (landslide-like). The rendered image embeds the gold darker
/// than the background so feature-agreement correlations are testable.
GoldScene make_scene(const SceneSpec& spec);

/// One annotator's marking of the scene under the given profile.
BinaryMask sample_annotation(const GoldScene& scene, const RaterProfile& profile);

/// Whole cohort with ids "A1".."AN".
AnnotationStack make_stack(const GoldScene& scene, const std::vector<RaterProfile>& profiles);

/// Fraction of (ROI) pixels where the mask differs from the gold.
double true_error(const BinaryMask& mask, const BinaryMask& gold,
                  const std::optional<BinaryMask>& roi = std::nullopt);

}  // namespace synth
}  // namespace gteval

#endif
