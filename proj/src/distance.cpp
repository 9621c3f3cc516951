#include "gteval/distance.hpp"

#include <algorithm>
#include <limits>

namespace gteval {

namespace {

constexpr double kFar = 1e18;

// 1-D squared distance transform of sampled function f (Felzenszwalb &
// Huttenlocher lower envelope of parabolas).
void dt_1d(const std::vector<double>& f, std::vector<double>& d, std::vector<int>& v,
           std::vector<double>& z, int n) {
    int k = 0;
    v[0] = 0;
    z[0] = -std::numeric_limits<double>::infinity();
    z[1] = std::numeric_limits<double>::infinity();
    for (int qi = 1; qi < n; ++qi) {
        const double fq = f[static_cast<std::size_t>(qi)];
        double s;
        for (;;) {
            const int vk = v[static_cast<std::size_t>(k)];
            s = ((fq + static_cast<double>(qi) * qi) -
                 (f[static_cast<std::size_t>(vk)] + static_cast<double>(vk) * vk)) /
                (2.0 * (qi - vk));
            if (s <= z[static_cast<std::size_t>(k)]) {
                --k;
            } else {
                break;
            }
        }
        ++k;
        v[static_cast<std::size_t>(k)] = qi;
        z[static_cast<std::size_t>(k)] = s;
        z[static_cast<std::size_t>(k) + 1] = std::numeric_limits<double>::infinity();
    }
    k = 0;
    for (int qi = 0; qi < n; ++qi) {
        while (z[static_cast<std::size_t>(k) + 1] < static_cast<double>(qi)) ++k;
        const int vk = v[static_cast<std::size_t>(k)];
        const double dx = static_cast<double>(qi - vk);
        d[static_cast<std::size_t>(qi)] = dx * dx + f[static_cast<std::size_t>(vk)];
    }
}

}  // namespace

std::vector<double> squared_distance_transform(const BinaryMask& mask) {
    const ImageGrid& g = mask.grid();
    const int w = g.width, h = g.height;
    std::vector<double> dist(g.pixel_count());
    for (std::size_t i = 0; i < dist.size(); ++i) dist[i] = mask.at(i) ? 0.0 : kFar;

    const int n_max = std::max(w, h);
    std::vector<double> f(static_cast<std::size_t>(n_max));
    std::vector<double> d(static_cast<std::size_t>(n_max));
    std::vector<int> v(static_cast<std::size_t>(n_max));
    std::vector<double> z(static_cast<std::size_t>(n_max) + 1);

    // Columns, then rows.
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) f[static_cast<std::size_t>(y)] = dist[g.index(x, y)];
        dt_1d(f, d, v, z, h);
        for (int y = 0; y < h; ++y) dist[g.index(x, y)] = d[static_cast<std::size_t>(y)];
    }
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) f[static_cast<std::size_t>(x)] = dist[g.index(x, y)];
        dt_1d(f, d, v, z, w);
        for (int x = 0; x < w; ++x) dist[g.index(x, y)] = d[static_cast<std::size_t>(x)];
    }
    return dist;
}

}  // namespace gteval
