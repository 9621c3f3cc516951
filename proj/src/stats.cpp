#include "gteval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gteval {

namespace {

// Continued-fraction core of the incomplete beta function (Lentz's
// method, as in the classical numerical literature).
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIter = 500;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_tailed_p(double t, double dof) {
    if (dof <= 0.0) throw ArgumentError("student_t_two_tailed_p: dof must be positive");
    if (!std::isfinite(t)) return 0.0;
    if (t == 0.0) return 1.0;
    // The continued fraction converges slowly for very large dof; the
    // normal limit is accurate to O(1/dof) there.
    if (dof > 1e7) return std::erfc(std::fabs(t) / std::sqrt(2.0));
    const double x = dof / (dof + t * t);
    return regularized_incomplete_beta(dof / 2.0, 0.5, x);
}

CorrelationResult pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw ArgumentError("pearson: sample vectors must have equal length");
    const std::size_t n = xs.size();
    if (n < 3) throw ArgumentError("pearson: need at least 3 samples");

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw UndefinedCorrelationError("pearson: constant sample");

    double r = sxy / std::sqrt(sxx * syy);
    r = std::clamp(r, -1.0, 1.0);

    CorrelationResult out;
    out.r = r;
    out.n = n;
    const double df = static_cast<double>(n - 2);
    if (std::fabs(r) >= 1.0) {
        out.p = 0.0;
    } else {
        const double t = r * std::sqrt(df / (1.0 - r * r));
        out.p = student_t_two_tailed_p(t, df);
    }
    return out;
}

MeanStd mean_std(std::span<const double> xs, bool sample) {
    if (xs.empty()) throw ArgumentError("mean_std: empty sample");
    MeanStd out;
    for (double v : xs) out.mean += v;
    out.mean /= static_cast<double>(xs.size());
    if (xs.size() == 1) {
        out.stddev = 0.0;
        return out;
    }
    double ss = 0.0;
    for (double v : xs) {
        const double d = v - out.mean;
        ss += d * d;
    }
    const double denom = sample ? static_cast<double>(xs.size() - 1)
                                : static_cast<double>(xs.size());
    out.stddev = std::sqrt(ss / denom);
    return out;
}

}  // namespace gteval
