#include "gteval/raters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gteval/stats.hpp"

namespace gteval {

F1Matrix::F1Matrix(std::vector<std::string> ids, std::vector<double> f1,
                   std::vector<double> precision, std::vector<double> recall,
                   std::vector<bool> degenerate)
    : ids_(std::move(ids)), f1_(std::move(f1)), precision_(std::move(precision)),
      recall_(std::move(recall)), degenerate_(std::move(degenerate)) {
    const std::size_t n = ids_.size();
    if (f1_.size() != n * n || precision_.size() != n * n || recall_.size() != n * n ||
        degenerate_.size() != n)
        throw ArgumentError("F1Matrix: inconsistent buffer sizes");
}

F1Matrix pairwise_f1(const AnnotationStack& stack) {
    const int n = stack.n();
    if (n < 2) throw DataError("pairwise_f1: need at least 2 annotators");
    const std::size_t pixels = stack.grid().pixel_count();

    std::vector<std::uint64_t> sizes(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        const auto& m = stack.annotator(i).mask;
        std::uint64_t c = 0;
        for (std::size_t px = 0; px < pixels; ++px)
            if (m.at(px) && stack.in_roi(px)) ++c;
        sizes[static_cast<std::size_t>(i)] = c;
    }

    const std::size_t nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    std::vector<double> f1(nn, 0.0), prec(nn, 0.0), rec(nn, 0.0);
    std::vector<bool> degenerate(static_cast<std::size_t>(n), false);
    for (int i = 0; i < n; ++i) {
        degenerate[static_cast<std::size_t>(i)] = sizes[static_cast<std::size_t>(i)] == 0;
        f1[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
           static_cast<std::size_t>(i)] = 1.0;
        prec[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
             static_cast<std::size_t>(i)] = 1.0;
        rec[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
            static_cast<std::size_t>(i)] = 1.0;
    }

    for (int i = 0; i < n; ++i) {
        const auto& mi = stack.annotator(i).mask;
        for (int j = i + 1; j < n; ++j) {
            const auto& mj = stack.annotator(j).mask;
            std::uint64_t inter = 0;
            for (std::size_t px = 0; px < pixels; ++px)
                if (mi.at(px) && mj.at(px) && stack.in_roi(px)) ++inter;

            const std::uint64_t si = sizes[static_cast<std::size_t>(i)];
            const std::uint64_t sj = sizes[static_cast<std::size_t>(j)];
            const double p_ij = si > 0 ? static_cast<double>(inter) / static_cast<double>(si) : 0.0;
            const double r_ij = sj > 0 ? static_cast<double>(inter) / static_cast<double>(sj) : 0.0;
            const double f = (p_ij + r_ij) > 0.0 ? 2.0 * p_ij * r_ij / (p_ij + r_ij) : 0.0;

            const std::size_t ij = static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                                   static_cast<std::size_t>(j);
            const std::size_t ji = static_cast<std::size_t>(j) * static_cast<std::size_t>(n) +
                                   static_cast<std::size_t>(i);
            f1[ij] = f1[ji] = f;
            prec[ij] = p_ij;
            rec[ij] = r_ij;
            // Swapping the pair swaps the roles of precision and recall.
            prec[ji] = r_ij;
            rec[ji] = p_ij;
        }
    }

    std::vector<std::string> ids;
    ids.reserve(static_cast<std::size_t>(n));
    for (const Annotation& a : stack.annotations()) ids.push_back(a.id);
    return F1Matrix(std::move(ids), std::move(f1), std::move(prec), std::move(rec),
                    std::move(degenerate));
}

Dendrogram ward_cluster(const F1Matrix& matrix) {
    const int n = matrix.n();
    if (n < 2) throw DataError("ward_cluster: need at least 2 annotators");

    // Distances indexed directly by cluster id (0..n-1 leaves, n..2n-2
    // merged clusters); dead clusters are simply skipped.
    const int total = 2 * n - 1;
    std::vector<double> dist(static_cast<std::size_t>(total) * static_cast<std::size_t>(total),
                             0.0);
    const auto at = [&](int i, int j) -> double& {
        return dist[static_cast<std::size_t>(i) * static_cast<std::size_t>(total) +
                    static_cast<std::size_t>(j)];
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) at(i, j) = matrix.diff(i, j);

    std::vector<bool> alive(static_cast<std::size_t>(total), false);
    std::vector<int> size(static_cast<std::size_t>(total), 0);
    for (int i = 0; i < n; ++i) {
        alive[static_cast<std::size_t>(i)] = true;
        size[static_cast<std::size_t>(i)] = 1;
    }

    Dendrogram out;
    out.leaf_ids = matrix.ids();
    out.merges.reserve(static_cast<std::size_t>(n) - 1);

    for (int step = 0; step < n - 1; ++step) {
        // Minimum distance among alive pairs; ties take the smallest (i, j).
        int best_i = -1, best_j = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n + step; ++i) {
            if (!alive[static_cast<std::size_t>(i)]) continue;
            for (int j = i + 1; j < n + step; ++j) {
                if (!alive[static_cast<std::size_t>(j)]) continue;
                if (at(i, j) < best) {
                    best = at(i, j);
                    best_i = i;
                    best_j = j;
                }
            }
        }

        const int merged = n + step;
        const double ni = size[static_cast<std::size_t>(best_i)];
        const double nj = size[static_cast<std::size_t>(best_j)];
        out.merges.push_back({best_i, best_j, best,
                              static_cast<int>(ni + nj)});

        for (int k = 0; k < merged; ++k) {
            if (!alive[static_cast<std::size_t>(k)] || k == best_i || k == best_j) continue;
            const double nk = size[static_cast<std::size_t>(k)];
            const double d = ((ni + nk) * at(best_i, k) + (nj + nk) * at(best_j, k) -
                              nk * best) /
                             (ni + nj + nk);
            at(merged, k) = d;
            at(k, merged) = d;
        }
        alive[static_cast<std::size_t>(best_i)] = false;
        alive[static_cast<std::size_t>(best_j)] = false;
        alive[static_cast<std::size_t>(merged)] = true;
        size[static_cast<std::size_t>(merged)] = static_cast<int>(ni + nj);
    }
    return out;
}

namespace {

void append_newick(const Dendrogram& d, int cluster_id, double parent_height,
                   std::string& out) {
    char buf[64];
    const int n = static_cast<int>(d.leaf_ids.size());
    if (cluster_id < n) {
        out += d.leaf_ids[static_cast<std::size_t>(cluster_id)];
        std::snprintf(buf, sizeof(buf), ":%.9g", parent_height);
        out += buf;
        return;
    }
    const DendrogramMerge& m = d.merges[static_cast<std::size_t>(cluster_id - n)];
    out += '(';
    append_newick(d, m.left, m.height, out);
    out += ',';
    append_newick(d, m.right, m.height, out);
    out += ')';
    std::snprintf(buf, sizeof(buf), ":%.9g", parent_height - m.height);
    out += buf;
}

}  // namespace

std::string Dendrogram::to_newick() const {
    if (merges.empty()) return ";";
    std::string out;
    const DendrogramMerge& root = merges.back();
    out += '(';
    append_newick(*this, root.left, root.height, out);
    out += ',';
    append_newick(*this, root.right, root.height, out);
    out += ");";
    return out;
}

std::vector<int> flag_mean_diff_outliers(const std::vector<double>& mean_diffs,
                                         bool sample_std) {
    const MeanStd ms = mean_std(mean_diffs, sample_std);
    std::vector<int> flagged;
    for (std::size_t i = 0; i < mean_diffs.size(); ++i)
        if (mean_diffs[i] > ms.mean + ms.stddev) flagged.push_back(static_cast<int>(i));
    return flagged;
}

OutlierResult detect_outliers(const F1Matrix& matrix, bool sample_std) {
    const int n = matrix.n();
    OutlierResult out;
    out.mean_diffs.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j)
            if (j != i) acc += matrix.diff(i, j);
        out.mean_diffs[static_cast<std::size_t>(i)] = acc / static_cast<double>(n - 1);
    }
    if (n < 3) {
        out.reliable = false;
        const MeanStd ms = mean_std(out.mean_diffs, false);
        out.mean = ms.mean;
        out.stddev = ms.stddev;
        return out;
    }
    const MeanStd ms = mean_std(out.mean_diffs, sample_std);
    out.mean = ms.mean;
    out.stddev = ms.stddev;
    for (int i : flag_mean_diff_outliers(out.mean_diffs, sample_std))
        out.outlier_ids.push_back(matrix.ids()[static_cast<std::size_t>(i)]);
    return out;
}

ConfusionCounts confusion(const BinaryMask& test, const BinaryMask& reference,
                          const std::optional<BinaryMask>& roi) {
    require_same_grid(test.grid(), reference.grid(), "confusion");
    if (roi) require_same_grid(test.grid(), roi->grid(), "confusion ROI");
    ConfusionCounts c;
    for (std::size_t i = 0; i < test.size(); ++i) {
        if (roi && !roi->at(i)) continue;
        const bool t = test.at(i) != 0;
        const bool r = reference.at(i) != 0;
        if (t && r) ++c.tp;
        else if (t && !r) ++c.fp;
        else if (!t && r) ++c.fn;
        else ++c.tn;
    }
    return c;
}

std::optional<double> cohen_kappa(const ConfusionCounts& c) {
    const double total = static_cast<double>(c.total());
    if (total == 0.0) return std::nullopt;
    const double po = (static_cast<double>(c.tp) + static_cast<double>(c.tn)) / total;
    const double pe =
        (static_cast<double>(c.tp + c.fp) * static_cast<double>(c.tp + c.fn) +
         static_cast<double>(c.fn + c.tn) * static_cast<double>(c.fp + c.tn)) /
        (total * total);
    if (pe >= 1.0) return std::nullopt;
    return (po - pe) / (1.0 - pe);
}

std::vector<RaterStatsRow> rater_stats(const AnnotationStack& stack,
                                       const BinaryMask& consensus) {
    require_same_grid(stack.grid(), consensus.grid(), "rater_stats");
    std::vector<RaterStatsRow> rows;
    rows.reserve(static_cast<std::size_t>(stack.n()));
    for (const Annotation& a : stack.annotations()) {
        RaterStatsRow row;
        row.id = a.id;
        const ConfusionCounts c = confusion(a.mask, consensus, stack.roi());
        row.counts = c;
        if (c.tp + c.fn > 0)
            row.sensitivity = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
        if (c.tn + c.fp > 0)
            row.specificity = static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
        if (c.tp + c.fp > 0)
            row.ppv = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
        if (c.tn + c.fn > 0)
            row.npv = static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fn);
        row.kappa = cohen_kappa(c);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace gteval
