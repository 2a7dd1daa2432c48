#include "simnoise/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "simnoise/error.hpp"

namespace simnoise {
namespace {

constexpr double kTolerance = 1e-12;
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 10000;

// Continued fraction for I_x(a, b) without the front factor.
double BetaContinuedFraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
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
    if (std::abs(del - 1.0) < kTolerance) return h;
  }
  throw ParameterError("incomplete beta continued fraction did not converge");
}

void CheckDf(double df) {
  if (!(df > 0.0) || std::isnan(df)) throw ParameterError("degrees of freedom must be > 0");
}

double FisherLowerTail(double f, double df1, double df2) {
  if (f <= 0.0) return 0.0;
  if (std::isinf(f)) return 1.0;
  return regularized_incomplete_beta(0.5 * df1, 0.5 * df2, df1 * f / (df1 * f + df2));
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw ParameterError("incomplete beta needs a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw ParameterError("incomplete beta needs x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::clamp(front * BetaContinuedFraction(a, b, x) / a, 0.0, 1.0);
  }
  return std::clamp(1.0 - front * BetaContinuedFraction(b, a, 1.0 - x) / b, 0.0, 1.0);
}

double student_t_upper_tail(double t, double df) {
  CheckDf(df);
  if (std::isnan(t)) throw ParameterError("t statistic is NaN");
  if (std::isinf(t)) return t > 0.0 ? 0.0 : 1.0;
  // P(|T| >= |t|) = I_{df/(df+t^2)}(df/2, 1/2)
  const double two_sided = regularized_incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
  return t >= 0.0 ? 0.5 * two_sided : 1.0 - 0.5 * two_sided;
}

double fisher_f_upper_tail(double f, double df1, double df2) {
  CheckDf(df1);
  CheckDf(df2);
  if (std::isnan(f)) throw ParameterError("F statistic is NaN");
  if (f <= 0.0) return 1.0;
  if (std::isinf(f)) return 0.0;
  return regularized_incomplete_beta(0.5 * df2, 0.5 * df1, df2 / (df2 + df1 * f));
}

double tail_probability(double statistic, const Distribution& distribution,
                        Sidedness sidedness) {
  if (const auto* t = std::get_if<StudentT>(&distribution)) {
    const double upper = student_t_upper_tail(std::abs(statistic), t->df);
    if (sidedness == Sidedness::kTwo) return std::min(1.0, 2.0 * upper);
    return statistic >= 0.0 ? upper : 1.0 - upper;
  }
  const auto& f = std::get<FisherF>(distribution);
  const double upper = fisher_f_upper_tail(statistic, f.df1, f.df2);
  if (sidedness == Sidedness::kOne) return upper;
  return std::min(1.0, 2.0 * std::min(upper, FisherLowerTail(statistic, f.df1, f.df2)));
}

}  // namespace simnoise
