#include "simnoise/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "simnoise/error.hpp"

namespace simnoise {

double mean(std::span<const double> x) {
  if (x.empty()) throw ParameterError("mean of an empty sample");
  double sum = 0.0;
  for (double v : x) sum += v;
  return sum / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return ss / static_cast<double>(x.size() - 1);
}

// ---------------------------------------------------------------------------

namespace {

void CheckGroup(std::span<const double> g, const char* name) {
  if (g.size() < 2) {
    throw ParameterError(std::string("t-test group ") + name + " needs at least 2 values");
  }
  for (double v : g) {
    if (!std::isfinite(v)) throw ParameterError(std::string("t-test group ") + name + " has a non-finite value");
  }
}

}  // namespace

TTestResult t_test_unpaired(std::span<const double> group_a, std::span<const double> group_b,
                            TTestVariant variant) {
  CheckGroup(group_a, "a");
  CheckGroup(group_b, "b");
  const double na = static_cast<double>(group_a.size());
  const double nb = static_cast<double>(group_b.size());
  const double mean_a = mean(group_a);
  const double mean_b = mean(group_b);
  const double var_a = sample_variance(group_a);
  const double var_b = sample_variance(group_b);
  const double diff = mean_a - mean_b;

  TTestResult r;
  double se2 = 0.0;
  if (variant == TTestVariant::kPooled) {
    r.degrees_of_freedom = na + nb - 2.0;
    const double pooled = ((na - 1.0) * var_a + (nb - 1.0) * var_b) / r.degrees_of_freedom;
    se2 = pooled * (1.0 / na + 1.0 / nb);
  } else {
    const double ua = var_a / na;
    const double ub = var_b / nb;
    se2 = ua + ub;
    const double denom = ua * ua / (na - 1.0) + ub * ub / (nb - 1.0);
    // Both variances zero: fall back to the pooled df.
    r.degrees_of_freedom = denom > 0.0 ? se2 * se2 / denom : na + nb - 2.0;
  }

  if (!(se2 > 0.0)) {
    r.degenerate = true;
    if (diff == 0.0) {
      r.t_statistic = 0.0;
      r.p_value = 1.0;
    } else {
      r.t_statistic = std::copysign(std::numeric_limits<double>::infinity(), diff);
      r.p_value = 0.0;
    }
    return r;
  }
  r.t_statistic = diff / std::sqrt(se2);
  r.p_value = tail_probability(r.t_statistic, StudentT{r.degrees_of_freedom}, Sidedness::kTwo);
  return r;
}

// ---------------------------------------------------------------------------

FactorialTable::FactorialTable(std::string factor_a, std::string factor_b)
    : factor_a_(std::move(factor_a)), factor_b_(std::move(factor_b)) {}

std::size_t FactorialTable::LevelIndex(std::vector<std::string>& levels,
                                       const std::string& level) {
  auto it = std::find(levels.begin(), levels.end(), level);
  if (it != levels.end()) return static_cast<std::size_t>(it - levels.begin());
  levels.push_back(level);
  return levels.size() - 1;
}

void FactorialTable::add(const std::string& level_a, const std::string& level_b,
                         double value) {
  if (!std::isfinite(value)) throw ParameterError("ANOVA observation is not finite");
  const std::size_t i = LevelIndex(levels_a_, level_a);
  const std::size_t j = LevelIndex(levels_b_, level_b);
  if (cells_.size() < levels_a_.size()) cells_.resize(levels_a_.size());
  for (auto& row : cells_) {
    if (row.size() < levels_b_.size()) row.resize(levels_b_.size());
  }
  cells_[i][j].push_back(value);
}

const std::vector<double>& FactorialTable::cell(std::size_t i, std::size_t j) const {
  static const std::vector<double> kEmpty;
  if (i >= cells_.size() || j >= cells_[i].size()) return kEmpty;
  return cells_[i][j];
}

std::optional<std::size_t> FactorialTable::balanced_replicates() const {
  if (levels_a_.empty() || levels_b_.empty()) return std::nullopt;
  const std::size_t n = cell(0, 0).size();
  if (n == 0) return std::nullopt;
  for (std::size_t i = 0; i < levels_a_.size(); ++i) {
    for (std::size_t j = 0; j < levels_b_.size(); ++j) {
      if (cell(i, j).size() != n) return std::nullopt;
    }
  }
  return n;
}

const AnovaRow* AnovaResult::find(const std::string& effect) const {
  for (const AnovaRow& row : rows) {
    if (row.effect == effect) return &row;
  }
  return nullptr;
}

AnovaResult anova_two_way(const FactorialTable& table) {
  const std::size_t a = table.levels_a().size();
  const std::size_t b = table.levels_b().size();
  if (a < 2 || b < 2) {
    throw ParameterError("two-way ANOVA needs at least 2 levels per factor (" +
                         table.factor_a() + ": " + std::to_string(a) + ", " +
                         table.factor_b() + ": " + std::to_string(b) + ")");
  }
  const auto replicates = table.balanced_replicates();
  if (!replicates) {
    throw UnbalancedDesignError("two-way ANOVA needs a balanced table with no empty cells");
  }
  const std::size_t n = *replicates;
  const double total_count = static_cast<double>(a * b * n);

  double grand = 0.0;
  double raw_ss = 0.0;
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      for (double v : table.cell(i, j)) {
        grand += v;
        raw_ss += v * v;
      }
    }
  }
  grand /= total_count;

  // Totals of the centred data; SS terms via the totals formulas, the
  // within-cell term via deviations from cell means.
  std::vector<double> row_total(a, 0.0);
  std::vector<double> col_total(b, 0.0);
  double ss_total = 0.0;
  double ss_cells = 0.0;
  double ss_within = 0.0;
  double sum_centered = 0.0;
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      const auto& values = table.cell(i, j);
      double cell_total = 0.0;
      for (double v : values) {
        const double c = v - grand;
        cell_total += c;
        ss_total += c * c;
      }
      const double cell_mean = cell_total / static_cast<double>(n);
      for (double v : values) {
        const double d = (v - grand) - cell_mean;
        ss_within += d * d;
      }
      row_total[i] += cell_total;
      col_total[j] += cell_total;
      sum_centered += cell_total;
      ss_cells += cell_total * cell_total / static_cast<double>(n);
    }
  }
  const double correction = sum_centered * sum_centered / total_count;
  ss_total -= correction;
  ss_cells -= correction;
  double ss_a = -correction;
  for (double t : row_total) ss_a += t * t / static_cast<double>(b * n);
  double ss_b = -correction;
  for (double t : col_total) ss_b += t * t / static_cast<double>(a * n);
  // Spread at rounding level of the raw data: every observation is equal.
  const double rounding_floor = 1e-28 * raw_ss;
  if (ss_total <= rounding_floor) {
    ss_total = ss_cells = ss_within = ss_a = ss_b = 0.0;
  }
  ss_a = std::max(ss_a, 0.0);
  ss_b = std::max(ss_b, 0.0);
  double ss_ab = std::max(ss_cells - ss_a - ss_b, 0.0);

  AnovaResult result;
  result.total_sum_of_squares = std::max(ss_total, 0.0);
  const double df_a = static_cast<double>(a - 1);
  const double df_b = static_cast<double>(b - 1);
  const double df_ab = df_a * df_b;

  AnovaRow row_a{table.factor_a(), ss_a, df_a, ss_a / df_a, {}, {}};
  AnovaRow row_b{table.factor_b(), ss_b, df_b, ss_b / df_b, {}, {}};
  AnovaRow row_res{kResidualEffect, 0.0, 0.0, 0.0, {}, {}};
  std::optional<AnovaRow> row_ab;
  if (n == 1) {
    result.interaction_pooled = true;
    row_res.sum_of_squares = ss_ab;
    row_res.df = df_ab;
  } else {
    row_ab = AnovaRow{kInteractionEffect, ss_ab, df_ab, ss_ab / df_ab, {}, {}};
    row_res.sum_of_squares = ss_within;
    row_res.df = static_cast<double>(a * b * (n - 1));
  }
  row_res.mean_square = row_res.sum_of_squares / row_res.df;

  // A residual at rounding level of the total spread counts as zero.
  const bool residual_zero =
      row_res.sum_of_squares <= 1e-14 * result.total_sum_of_squares + rounding_floor;
  result.f_undefined = residual_zero;
  auto fill = [&](AnovaRow& row) {
    if (residual_zero) return;
    row.f_statistic = row.mean_square / row_res.mean_square;
    row.p_value = fisher_f_upper_tail(*row.f_statistic, row.df, row_res.df);
  };
  fill(row_a);
  fill(row_b);
  result.rows.push_back(row_a);
  result.rows.push_back(row_b);
  if (row_ab) {
    fill(*row_ab);
    result.rows.push_back(*row_ab);
  }
  result.rows.push_back(row_res);
  return result;
}

// ---------------------------------------------------------------------------

std::optional<double> pearson_r(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ParameterError("pearson_r: inputs differ in length");
  if (x.size() < 3) throw ParameterError("pearson_r needs at least 3 points");
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace simnoise
