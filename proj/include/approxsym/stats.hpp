#pragma once

#include <span>

namespace approxsym {

struct TTestResult {
  double t = 0.0;
  double p = 1.0;
  int df = 0;
  // Differences have zero variance but a nonzero mean: t is infinite, p = 0.
  bool degenerate = false;
};

/// Regularized incomplete beta I_x(a, b), continued fraction to 1e-12.
double regularized_incomplete_beta(double a, double b, double x);

/// Student t cumulative distribution function with `df` degrees of freedom.
double student_t_cdf(double t, double df);

/// Two-sided paired t-test on d_i = x_i - y_i. Requires |x| = |y| >= 2.
TTestResult paired_t_test(std::span<const double> x, std::span<const double> y);

/// mean(x - y) / sd(x - y) with the n - 1 sample deviation. Positive when x is
/// larger on average. Zero variance gives 0 for zero mean, else +-infinity.
double cohens_d_paired(std::span<const double> x, std::span<const double> y);

/// alpha / m.
double bonferroni(double alpha, int m);

}  // namespace approxsym
