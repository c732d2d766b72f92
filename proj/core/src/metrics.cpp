#include "epf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "epf/error.hpp"

namespace epf {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

std::vector<MetricsResult> compute_metrics(const std::vector<ForecastRecord>& records,
                                           MetricsGrouping grouping) {
  struct Acc {
    double abs_sum = 0, sq_sum = 0;
    long count = 0;
    std::set<Date> days;
  };
  std::map<std::tuple<std::string, int, int>, Acc> groups;
  for (const auto& r : records) {
    if (r.flagged) continue;
    int year = grouping == MetricsGrouping::by_year ? year_of(r.target) : 0;
    Acc& a = groups[{r.model, r.horizon, year}];
    double e = r.actual - r.prediction;
    a.abs_sum += std::abs(e);
    a.sq_sum += e * e;
    a.count += 1;
    a.days.insert(r.target);
  }
  if (groups.empty()) throw Error(ErrorCode::EmptyInput, "no records to score");
  std::vector<MetricsResult> out;
  for (const auto& [key, a] : groups) {
    MetricsResult m;
    m.model = std::get<0>(key);
    m.horizon = std::get<1>(key);
    m.year = std::get<2>(key);
    m.mae = a.abs_sum / double(a.count);
    m.rmse = std::sqrt(a.sq_sum / double(a.count));
    m.days = long(a.days.size());
    m.hour_count = a.count;
    out.push_back(std::move(m));
  }
  return out;
}

DmResult dm_test(const std::vector<ForecastRecord>& records_a,
                 const std::vector<ForecastRecord>& records_b, int horizon) {
  auto daily_loss = [&](const std::vector<ForecastRecord>& records) {
    std::map<Date, double> loss;
    for (const auto& r : records) {
      if (r.horizon != horizon || r.flagged) continue;
      loss[r.target] += std::abs(r.actual - r.prediction);
    }
    return loss;
  };
  std::map<Date, double> la = daily_loss(records_a);
  std::map<Date, double> lb = daily_loss(records_b);

  std::vector<double> d;
  for (const auto& [day, va] : la) {
    auto it = lb.find(day);
    if (it != lb.end()) d.push_back(va - it->second);
  }
  const long n = long(d.size());
  if (n < 30) {
    throw Error(ErrorCode::EmptyInput,
                "dm test needs >= 30 aligned days, got " + std::to_string(n));
  }

  double mean = 0;
  for (double v : d) mean += v;
  mean /= double(n);

  int q = std::min(horizon - 1, 30);
  auto gamma = [&](int k) {
    double s = 0;
    for (long t = 0; t + k < n; ++t) s += (d[size_t(t)] - mean) * (d[size_t(t + k)] - mean);
    return s / double(n);
  };
  double omega = gamma(0);
  for (int k = 1; k <= q; ++k) {
    omega += 2.0 * (1.0 - double(k) / double(q + 1)) * gamma(k);
  }
  if (!(omega > 0)) {
    throw Error(ErrorCode::DegenerateVariance,
                "long-run variance " + std::to_string(omega) + " not positive");
  }

  DmResult res;
  res.model_a = records_a.empty() ? "" : records_a.front().model;
  res.model_b = records_b.empty() ? "" : records_b.front().model;
  res.horizon = horizon;
  res.days = n;
  res.hac_lag = q;
  res.statistic = mean / std::sqrt(omega / double(n));
  res.p_value = normal_cdf(res.statistic);
  return res;
}

}  // namespace epf
