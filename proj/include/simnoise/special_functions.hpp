#pragma once

#include <variant>

namespace simnoise {

// I_x(a, b), the regularized incomplete beta function, for a, b > 0 and
// x in [0, 1]. Evaluated by the Lentz continued fraction on whichever of
// (x; a, b) or (1 - x; b, a) converges faster; the fraction stops once a step
// changes it by less than 1e-12.
double regularized_incomplete_beta(double a, double b, double x);

struct StudentT {
  double df;
};

struct FisherF {
  double df1;
  double df2;
};

using Distribution = std::variant<StudentT, FisherF>;

enum class Sidedness { kOne, kTwo };

// One-sided: upper tail P(X >= statistic). Two-sided: for Student t,
// P(|T| >= |t|); for F, 2 * min(upper, lower) capped at 1.
// ParameterError for df <= 0 or a NaN statistic.
double tail_probability(double statistic, const Distribution& distribution,
                        Sidedness sidedness);

double student_t_upper_tail(double t, double df);
double fisher_f_upper_tail(double f, double df1, double df2);

}  // namespace simnoise
