// Microbenchmarks on the two hot paths: the box-constrained elastic-net
// solver (one full lambda path with BIC selection) and seasonal spline
// basis construction.

#include <benchmark/benchmark.h>

#include <random>

#include "epf/seasonal.hpp"
#include "epf/solver.hpp"
#include "epf/spline.hpp"

namespace {

struct Problem {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  std::vector<epf::Interval> bounds;
};

Problem make_problem(long n, long p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Problem prob;
  prob.X.resize(n, p);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < p; ++j) prob.X(i, j) = gauss(rng);
  }
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  for (long j = 0; j < p; j += 3) beta(j) = gauss(rng);
  prob.y = prob.X * beta;
  for (long i = 0; i < n; ++i) prob.y(i) += 0.5 * gauss(rng);
  prob.bounds.assign(size_t(p), epf::Interval{});
  for (size_t j = 0; j < prob.bounds.size(); j += 2) {
    prob.bounds[j] = {0.0, 1.0};
  }
  return prob;
}

void BM_ElasticNetPath(benchmark::State& state) {
  Problem prob = make_problem(state.range(0), state.range(1), 7);
  for (auto _ : state) {
    auto fit = epf::fit_elastic_net(prob.X, prob.y, prob.bounds, {});
    benchmark::DoNotOptimize(fit.coefficients);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}
BENCHMARK(BM_ElasticNetPath)->Args({365, 17})->Args({1095, 17})->Args({1095, 40});

void BM_SplineBasis(benchmark::State& state) {
  const long n = state.range(0);
  Eigen::MatrixXd cov(n, 1);
  for (long i = 0; i < n; ++i) {
    cov(i, 0) = epf::covariate_value(epf::SeasonalCovariate::HoD,
                                     epf::make_date(2020, 1, 1) +
                                         std::chrono::days{i / 24},
                                     int(i % 24) + 1);
  }
  epf::SplineTermSpec spec{{{epf::SplineKind::cp, epf::SeasonalCovariate::HoD, 24}}};
  for (auto _ : state) {
    auto basis = epf::build_basis(spec, cov);
    benchmark::DoNotOptimize(basis.basis);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SplineBasis)->Arg(24 * 365)->Arg(24 * 1095);

void BM_SeasonalForecastDay(benchmark::State& state) {
  // small but real fitted model: three years of a daily sinusoid
  const long days = 1096;
  Eigen::VectorXd y(days * 24);
  for (long i = 0; i < y.size(); ++i) {
    y(i) = 1000.0 + 200.0 * std::sin(2.0 * 3.141592653589793 * double(i % 24) / 24.0);
  }
  epf::SmoothingGrid cheap;
  cheap.points = 3;
  cheap.passes = 1;
  epf::SeasonalModel model =
      epf::fit_seasonal(y, epf::make_date(2015, 1, 1), epf::SeasonalTarget::load,
                        epf::default_load_terms(), cheap);
  epf::Date day = epf::make_date(2019, 6, 1);
  for (auto _ : state) {
    double sum = 0;
    for (int h = 1; h <= 24; ++h) sum += epf::forecast_seasonal(model, day, h);
    benchmark::DoNotOptimize(sum);
  }
}
BENCHMARK(BM_SeasonalForecastDay);

}  // namespace

BENCHMARK_MAIN();
