#include "approxsym/stats.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "approxsym/error.hpp"

namespace approxsym {
namespace {

// Lentz's evaluation of the continued fraction for I_x(a, b).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 10000;
  constexpr double kEps = 1e-12;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  return h;
}

struct DiffStats {
  double mean = 0.0;
  double sd = 0.0;
  int n = 0;
};

DiffStats differences(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionError("paired samples must have equal length");
  if (x.size() < 2) throw InvalidInput("paired samples need at least two observations");
  const int n = static_cast<int>(x.size());
  std::vector<double> d(x.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d[i] = x[i] - y[i];
    sum += d[i];
  }
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : d) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1)), n};
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw InvalidInput("incomplete beta needs a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidInput("incomplete beta needs x in [0, 1]");
  if (x == 0.0 || x == 1.0) return x;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
  if (!(df > 0.0)) throw InvalidInput("degrees of freedom must be positive");
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double tail = 0.5 * regularized_incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
  return t > 0.0 ? 1.0 - tail : tail;
}

TTestResult paired_t_test(std::span<const double> x, std::span<const double> y) {
  const DiffStats s = differences(x, y);
  TTestResult r;
  r.df = s.n - 1;
  if (s.sd == 0.0) {
    if (s.mean == 0.0) return r;
    r.t = s.mean > 0.0 ? std::numeric_limits<double>::infinity()
                       : -std::numeric_limits<double>::infinity();
    r.p = 0.0;
    r.degenerate = true;
    return r;
  }
  r.t = s.mean / (s.sd / std::sqrt(static_cast<double>(s.n)));
  // Two-sided tail mass  P(|T| > |t|) = I_{df / (df + t^2)}(df / 2, 1 / 2).
  r.p = regularized_incomplete_beta(0.5 * r.df, 0.5, r.df / (r.df + r.t * r.t));
  return r;
}

double cohens_d_paired(std::span<const double> x, std::span<const double> y) {
  const DiffStats s = differences(x, y);
  if (s.sd == 0.0) {
    if (s.mean == 0.0) return 0.0;
    return s.mean > 0.0 ? std::numeric_limits<double>::infinity()
                        : -std::numeric_limits<double>::infinity();
  }
  return s.mean / s.sd;
}

double bonferroni(double alpha, int m) {
  if (m < 1) throw InvalidInput("Bonferroni needs at least one comparison");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie in (0, 1)");
  return alpha / m;
}

}  // namespace approxsym
