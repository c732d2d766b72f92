#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "epf/dates.hpp"

namespace epf {

enum class SplineKind { ps, cp };
enum class SeasonalCovariate { HoD, DoW, SoY };
enum class SeasonalTarget { load, res };

// Hours in the meteorological year of 365.24 days.
constexpr double kSoYPeriodHours = 8765.76;

struct SplineMargin {
  SplineKind kind;
  SeasonalCovariate covariate;
  int knots;  // number of basis functions before the sum-to-zero constraint
};

// One additive term: a single smooth (one margin) or a tensor interaction
// (two margins, additive marginal penalties).
struct SplineTermSpec {
  std::vector<SplineMargin> margins;
};

// Appendix term lists: the load model carries DoW terms, the RES model not.
std::vector<SplineTermSpec> default_load_terms();
std::vector<SplineTermSpec> default_res_terms();

struct FittedTerm {
  SplineTermSpec spec;
  std::vector<Eigen::MatrixXd> constraints;  // per margin, k x (k-1)
  int column_offset = 0;
  int column_count = 0;
  double lambda = 1.0;
};

struct SeasonalModel {
  SeasonalTarget target;
  Date train_start{};
  Date train_end{};  // inclusive last day
  double intercept = 0.0;
  double trend_slope = 0.0;  // MW per hour index
  double trend_mean = 0.0;   // training mean of the hour index
  std::vector<FittedTerm> terms;
  Eigen::VectorXd theta;  // concatenated term coefficients
};

struct SmoothingGrid {
  double log10_min = -2.0;
  double log10_max = 4.0;
  int points = 7;
  int passes = 2;
};

// Unconstrained-margin basis and penalty for one term at given covariates
// (one column per margin). Applies/returns the sum-to-zero constraints.
struct TermBasis {
  Eigen::MatrixXd basis;
  Eigen::MatrixXd penalty;
  std::vector<Eigen::MatrixXd> constraints;
};
TermBasis build_basis(const SplineTermSpec& spec, const Eigen::MatrixXd& covariates);

// Penalized least squares with per-term GCV smoothing selection. `y` is the
// hourly series starting at hour 1 of start_day, length a multiple of 24 and
// covering at least 3 years.
SeasonalModel fit_seasonal(const Eigen::VectorXd& y, Date start_day,
                           SeasonalTarget target,
                           const std::vector<SplineTermSpec>& specs,
                           const SmoothingGrid& grid = {});

// Deterministic basis evaluation with linear trend extrapolation.
// RES forecasts are floored at 0.
double forecast_seasonal(const SeasonalModel& model, Date day, int hour);

struct RefitEntry {
  Date train_end;  // inclusive
  int serve_year;
};
// Refit each January 1: the model trained on all complete data before year Y
// serves forecasts targeting year Y.
std::vector<RefitEntry> expanding_refit_schedule(Date data_start, Date data_end);

void save_seasonal_model(const SeasonalModel& model, const std::string& path);
SeasonalModel load_seasonal_model(const std::string& path);

// Covariate helpers (HoD in [0,24), DoW in [0,7), SoY in [0, period)).
double covariate_value(SeasonalCovariate c, Date day, int hour);
double hour_index(Date day, int hour);

}  // namespace epf
