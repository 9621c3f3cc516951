#include "gteval/morphology.hpp"

#include <array>
#include <vector>

namespace gteval {

namespace {

// Neighbours in Zhang-Suen order P2..P9: N, NE, E, SE, S, SW, W, NW.
constexpr std::array<int, 8> kDx = {0, 1, 1, 1, 0, -1, -1, -1};
constexpr std::array<int, 8> kDy = {-1, -1, 0, 1, 1, 1, 0, -1};

struct Neighbourhood {
    std::array<int, 8> p;
    int set_count;
    int transitions;  // 0->1 transitions around the ring (A(P))
};

Neighbourhood read_neighbourhood(const BinaryMask& m, int x, int y) {
    Neighbourhood nb{};
    nb.set_count = 0;
    for (int k = 0; k < 8; ++k) {
        const int nx = x + kDx[static_cast<std::size_t>(k)];
        const int ny = y + kDy[static_cast<std::size_t>(k)];
        nb.p[static_cast<std::size_t>(k)] = m.grid().contains(nx, ny) ? m.at(nx, ny) : 0;
        nb.set_count += nb.p[static_cast<std::size_t>(k)];
    }
    nb.transitions = 0;
    for (int k = 0; k < 8; ++k)
        if (nb.p[static_cast<std::size_t>(k)] == 0 &&
            nb.p[static_cast<std::size_t>((k + 1) % 8)] == 1)
            ++nb.transitions;
    return nb;
}

// Deletable under one Zhang-Suen sub-pass, evaluated against the live
// image (sequential variant: every deletion is a simple-point removal,
// so components stay connected and never disappear).
bool zs_deletable(const BinaryMask& m, int x, int y, bool first_subpass) {
    const Neighbourhood nb = read_neighbourhood(m, x, y);
    if (nb.set_count < 2 || nb.set_count > 6) return false;
    if (nb.transitions != 1) return false;
    const int n = nb.p[0], e = nb.p[2], s = nb.p[4], w = nb.p[6];
    if (first_subpass) return (n * e * s) == 0 && (e * s * w) == 0;
    return (n * e * w) == 0 && (n * s * w) == 0;
}

// One full thinning round (both sub-passes). Returns number of deletions.
std::size_t zs_round(BinaryMask& m) {
    std::size_t deleted = 0;
    for (int subpass = 0; subpass < 2; ++subpass) {
        for (int y = 0; y < m.grid().height; ++y)
            for (int x = 0; x < m.grid().width; ++x)
                if (m.at(x, y) && zs_deletable(m, x, y, subpass == 0)) {
                    m.set(x, y, false);
                    ++deleted;
                }
    }
    return deleted;
}

bool block_fully_set(const BinaryMask& m, int x, int y) {
    return m.at(x, y) && m.at(x + 1, y) && m.at(x, y + 1) && m.at(x + 1, y + 1);
}

// Resolve remaining fully-set 2x2 blocks (junction configurations the
// directional sub-passes may leave behind) by removing one simple pixel
// per block. Crossing number 1 keeps the removal connectivity-safe.
std::size_t resolve_blocks(BinaryMask& m) {
    std::size_t deleted = 0;
    for (int y = 0; y + 1 < m.grid().height; ++y)
        for (int x = 0; x + 1 < m.grid().width; ++x) {
            if (!block_fully_set(m, x, y)) continue;
            const std::array<std::pair<int, int>, 4> corners = {
                {{x, y}, {x + 1, y}, {x, y + 1}, {x + 1, y + 1}}};
            for (const auto& [cx, cy] : corners) {
                const Neighbourhood nb = read_neighbourhood(m, cx, cy);
                if (nb.transitions == 1 && nb.set_count >= 2 && nb.set_count <= 7) {
                    m.set(cx, cy, false);
                    ++deleted;
                    break;
                }
            }
        }
    return deleted;
}

}  // namespace

BinaryMask thin(const BinaryMask& mask) {
    BinaryMask out = mask;
    for (;;) {
        std::size_t changed = 0;
        while (zs_round(out) > 0) ++changed;
        changed += resolve_blocks(out);
        if (changed == 0) break;
    }
    return out;
}

BinaryMask dilate(const BinaryMask& mask, int rounds) {
    BinaryMask cur = mask;
    for (int r = 0; r < rounds; ++r) {
        BinaryMask next(cur.grid());
        for (int y = 0; y < cur.grid().height; ++y)
            for (int x = 0; x < cur.grid().width; ++x) {
                if (cur.at(x, y)) {
                    next.set(x, y, true);
                    continue;
                }
                bool hit = false;
                for (int k = 0; k < 8 && !hit; ++k) {
                    const int nx = x + kDx[static_cast<std::size_t>(k)];
                    const int ny = y + kDy[static_cast<std::size_t>(k)];
                    hit = cur.grid().contains(nx, ny) && cur.at(nx, ny);
                }
                next.set(x, y, hit);
            }
        cur = std::move(next);
    }
    return cur;
}

BinaryMask erode(const BinaryMask& mask, int rounds) {
    BinaryMask cur = mask;
    for (int r = 0; r < rounds; ++r) {
        BinaryMask next(cur.grid());
        for (int y = 0; y < cur.grid().height; ++y)
            for (int x = 0; x < cur.grid().width; ++x) {
                if (!cur.at(x, y)) continue;
                bool keep = true;
                for (int k = 0; k < 8 && keep; ++k) {
                    const int nx = x + kDx[static_cast<std::size_t>(k)];
                    const int ny = y + kDy[static_cast<std::size_t>(k)];
                    keep = cur.grid().contains(nx, ny) && cur.at(nx, ny);
                }
                next.set(x, y, keep);
            }
        cur = std::move(next);
    }
    return cur;
}

bool is_unit_width(const BinaryMask& mask) {
    for (int y = 0; y + 1 < mask.grid().height; ++y)
        for (int x = 0; x + 1 < mask.grid().width; ++x)
            if (block_fully_set(mask, x, y)) return false;
    return true;
}

bool is_subset(const BinaryMask& a, const BinaryMask& b) {
    require_same_grid(a.grid(), b.grid(), "is_subset");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.at(i) && !b.at(i)) return false;
    return true;
}

int component_count(const BinaryMask& mask) {
    const ImageGrid& g = mask.grid();
    std::vector<std::int32_t> label(g.pixel_count(), 0);
    int components = 0;
    std::vector<std::size_t> stack;
    for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x) {
            const std::size_t start = g.index(x, y);
            if (!mask.at(start) || label[start] != 0) continue;
            ++components;
            label[start] = components;
            stack.assign(1, start);
            while (!stack.empty()) {
                const std::size_t i = stack.back();
                stack.pop_back();
                const int cx = static_cast<int>(i % static_cast<std::size_t>(g.width));
                const int cy = static_cast<int>(i / static_cast<std::size_t>(g.width));
                for (int k = 0; k < 8; ++k) {
                    const int nx = cx + kDx[static_cast<std::size_t>(k)];
                    const int ny = cy + kDy[static_cast<std::size_t>(k)];
                    if (!g.contains(nx, ny)) continue;
                    const std::size_t ni = g.index(nx, ny);
                    if (mask.at(ni) && label[ni] == 0) {
                        label[ni] = components;
                        stack.push_back(ni);
                    }
                }
            }
        }
    return components;
}

}  // namespace gteval
