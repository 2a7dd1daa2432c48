#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "simnoise/special_functions.hpp"

namespace simnoise {

double mean(std::span<const double> x);
// Sample variance (n - 1 denominator); 0 for a single value.
double sample_variance(std::span<const double> x);

// ---------------------------------------------------------------------------
// Unpaired two-sample t-test
// ---------------------------------------------------------------------------

enum class TTestVariant {
  kPooled,  // Student, df = na + nb - 2
  kWelch,   // Welch-Satterthwaite df
};

struct TTestResult {
  double t_statistic = 0.0;  // mean(a) - mean(b) in the numerator
  double degrees_of_freedom = 0.0;
  double p_value = 1.0;
  bool two_sided = true;
  // Zero variance in both groups. Equal means give t = 0, p = 1; unequal means
  // give t = +/-inf, p = 0.
  bool degenerate = false;
};

// Two-sided. ParameterError when a group has fewer than 2 values or holds a
// non-finite value.
TTestResult t_test_unpaired(std::span<const double> group_a,
                            std::span<const double> group_b,
                            TTestVariant variant = TTestVariant::kPooled);

// ---------------------------------------------------------------------------
// Two-factor fixed-effects ANOVA
// ---------------------------------------------------------------------------

// Observations keyed by (level of A, level of B). Levels keep first-seen order.
class FactorialTable {
 public:
  FactorialTable(std::string factor_a, std::string factor_b);

  void add(const std::string& level_a, const std::string& level_b, double value);

  const std::string& factor_a() const noexcept { return factor_a_; }
  const std::string& factor_b() const noexcept { return factor_b_; }
  const std::vector<std::string>& levels_a() const noexcept { return levels_a_; }
  const std::vector<std::string>& levels_b() const noexcept { return levels_b_; }

  // Empty vector for a cell that never received an observation.
  const std::vector<double>& cell(std::size_t i, std::size_t j) const;

  // Replicates per cell when every cell holds the same nonzero count, else
  // nullopt.
  std::optional<std::size_t> balanced_replicates() const;

 private:
  std::size_t LevelIndex(std::vector<std::string>& levels, const std::string& level);

  std::string factor_a_;
  std::string factor_b_;
  std::vector<std::string> levels_a_;
  std::vector<std::string> levels_b_;
  std::vector<std::vector<std::vector<double>>> cells_;  // [a][b] -> values
};

struct AnovaRow {
  std::string effect;
  double sum_of_squares = 0.0;
  double df = 0.0;
  double mean_square = 0.0;
  // Absent for the residual row and when the residual mean square is zero.
  std::optional<double> f_statistic;
  std::optional<double> p_value;
};

struct AnovaResult {
  // factor A, factor B, interaction (omitted when pooled), residual
  std::vector<AnovaRow> rows;
  double total_sum_of_squares = 0.0;
  bool interaction_pooled = false;
  // Residual variance is zero, so no F ratio exists.
  bool f_undefined = false;

  const AnovaRow* find(const std::string& effect) const;
};

inline constexpr const char* kInteractionEffect = "interaction";
inline constexpr const char* kResidualEffect = "residual";

// Fixed-effects decomposition SS_A + SS_B + SS_AB + SS_res = SS_total for a
// balanced table. With one observation per cell the interaction is pooled into
// the residual. UnbalancedDesignError for empty or unequal cells;
// ParameterError for fewer than 2 levels on a factor.
AnovaResult anova_two_way(const FactorialTable& table);

// ---------------------------------------------------------------------------
// Correlation
// ---------------------------------------------------------------------------

// Sample Pearson correlation clamped to [-1, 1]; nullopt when either input has
// zero variance. ParameterError unless sizes match and are >= 3.
std::optional<double> pearson_r(std::span<const double> x, std::span<const double> y);

}  // namespace simnoise
