#ifndef GTEVAL_STATS_HPP
#define GTEVAL_STATS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "gteval/error.hpp"

namespace gteval {

struct CorrelationResult {
    double r = 0.0;       // Pearson coefficient in [-1, 1]
    double p = 1.0;       // two-tailed p-value
    std::size_t n = 0;    // sample count

    /// Significant to 99% confidence.
    bool significant() const { return p < 0.01; }
};

/// Pearson's r with a two-tailed p-value from
/// t = r * sqrt((n - 2) / (1 - r^2)) against Student's t with n - 2
/// degrees of freedom. Throws UndefinedCorrelationError when either
/// sample is constant and ArgumentError when n < 3 or lengths differ.
CorrelationResult pearson(std::span<const double> xs, std::span<const double> ys);

/// Two-tailed tail probability of Student's t distribution.
double student_t_two_tailed_p(double t, double dof);

/// Regularized incomplete beta function I_x(a, b).
double regularized_incomplete_beta(double a, double b, double x);

struct MeanStd {
    double mean = 0.0;
    double stddev = 0.0;
};

/// Mean and standard deviation; population form divides by n,
/// sample form by n - 1.
MeanStd mean_std(std::span<const double> xs, bool sample = false);

}  // namespace gteval

#endif
