#include "epf/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "epf/error.hpp"
#include "epf/fundamentals.hpp"

namespace epf {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct StackUnit {
  Technology tech;
  double capacity_mw;
};

const StackUnit kStack[] = {
    {Technology::lignite, 15000.0},
    {Technology::coal, 20000.0},
    {Technology::gas, 25000.0},
};

constexpr double kLigniteFuelPrice = 4.0;  // EUR/MWh_th, not exchange-traded

const PlantCharacteristics& plant(Technology t) {
  static const std::vector<PlantCharacteristics> plants = default_plants();
  for (const auto& p : plants) {
    if (p.technology == t) return p;
  }
  throw Error(ErrorCode::Internal, "missing plant");
}

}  // namespace

double synthetic_merit_price(double gas_price, double coal_price, double co2_price,
                             double residual_demand_mw) {
  std::vector<SupplyUnit> stack;
  for (const auto& u : kStack) {
    double fuel = u.tech == Technology::gas
                      ? gas_price
                      : (u.tech == Technology::coal ? coal_price : kLigniteFuelPrice);
    stack.push_back({u.capacity_mw, variable_cost(fuel, co2_price, plant(u.tech))});
  }
  return merit_order_price(residual_demand_mw, std::move(stack));
}

SyntheticMarket generate_synthetic_market(const SyntheticOptions& options) {
  if (options.years < 4) {
    throw Error(ErrorCode::InvalidConfig, "synthetic fixture needs >= 4 years");
  }
  Date start = make_date(options.start_year, 1, 1);
  Date end = make_date(options.start_year + options.years - 1, 12, 31);
  long days = (end - start).count() + 1;

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto noise = [&](double sigma) {
    return options.zero_noise ? 0.0 : sigma * gauss(rng);
  };

  // Daily fuel spot paths (geometric random walks, martingale increments).
  struct FuelPath {
    Commodity commodity;
    double level;
    double sigma;
    std::vector<double> values;
  };
  FuelPath paths[] = {
      {Commodity::co2, 25.0, 0.015, {}},
      {Commodity::gas, 20.0, 0.015, {}},
      {Commodity::coal, 70.0, 0.012, {}},
      {Commodity::oil, 60.0, 0.012, {}},
  };
  for (auto& p : paths) {
    p.values.reserve(size_t(days));
    double v = p.level;
    for (long d = 0; d < days; ++d) {
      p.values.push_back(v);
      double z = options.zero_noise ? 0.0 : gauss(rng);
      v *= std::exp(p.sigma * z - 0.5 * p.sigma * p.sigma);
    }
  }
  auto fuel_at = [&](Commodity c, long d) {
    return paths[size_t(c)].values[size_t(d)];
  };

  SyntheticMarket market;
  market.data = HourlyDataset(start, end);

  const double total_capacity =
      kStack[0].capacity_mw + kStack[1].capacity_mw + kStack[2].capacity_mw;

  for (long d = 0; d < days; ++d) {
    Date day = start + std::chrono::days{d};
    int doy = (day - make_date(year_of(day), 1, 1)).count() + 1;
    bool weekend = weekday_index(day) >= 5;
    double trend = 300.0 * double(d) / 365.25;
    double annual_load = 5000.0 * std::cos(2.0 * kPi * (doy - 10) / 365.25);
    double solar_season = 4000.0 + 3000.0 * std::cos(2.0 * kPi * (doy - 172) / 365.25);
    double wind_season = 1.0 + 0.4 * std::cos(2.0 * kPi * (doy - 15) / 365.25);

    for (int hour = 1; hour <= 24; ++hour) {
      double clock = hour - 1.0;
      double load = 35000.0 + trend + annual_load +
                    6000.0 * std::sin(2.0 * kPi * (clock - 8.0) / 24.0) +
                    (weekend ? -5000.0 : 0.0) + noise(400.0);
      double daylight = std::max(0.0, std::sin(kPi * (clock - 6.0) / 12.0));
      double solar = std::max(0.0, solar_season * daylight + noise(200.0) * daylight);
      double wind_on =
          std::max(100.0, 5000.0 * wind_season +
                              1500.0 * std::sin(2.0 * kPi * (d % 29) / 29.0) +
                              noise(600.0));
      double wind_off =
          std::max(50.0, 2000.0 * wind_season +
                             500.0 * std::sin(2.0 * kPi * (d % 17) / 17.0) +
                             noise(250.0));
      double res = solar + wind_on + wind_off;
      double residual =
          std::clamp(load - res, 500.0, total_capacity - 500.0);
      double price =
          synthetic_merit_price(fuel_at(Commodity::gas, d), fuel_at(Commodity::coal, d),
                                fuel_at(Commodity::co2, d), residual) +
          (options.zero_noise ? 0.0 : options.price_noise_sigma * gauss(rng));

      auto set = [&](int col, double v) { market.data.set_value(day, hour, col, v); };
      set(kPrice, price);
      set(kLoadActual, load);
      set(kLoadDaFc, std::max(0.0, load + noise(300.0)));
      set(kSolarActual, solar);
      set(kSolarDaFc, std::max(0.0, solar + noise(150.0) * daylight));
      set(kWindOnActual, wind_on);
      set(kWindOnDaFc, std::max(0.0, wind_on + noise(300.0)));
      set(kWindOffActual, wind_off);
      set(kWindOffDaFc, std::max(0.0, wind_off + noise(120.0)));
    }
  }

  // Spring clock-change hour as the neighbor mean so the raw CSV (which omits
  // it) round-trips bit-exactly through ingestion.
  for (int y = options.start_year; y < options.start_year + options.years; ++y) {
    Date spring = spring_transition(y);
    for (int col = 0; col < kRawColumnCount; ++col) {
      double v = 0.5 * (market.data.value(spring, 2, col) +
                        market.data.value(spring, 4, col));
      market.data.set_value(spring, 3, col, v);
    }
  }
  for (Date day = start; day <= end; day += std::chrono::days{1}) {
    for (int hour = 1; hour <= 24; ++hour) {
      market.data.set_value(day, hour, kResActual,
                            market.data.value(day, hour, kSolarActual) +
                                market.data.value(day, hour, kWindOnActual) +
                                market.data.value(day, hour, kWindOffActual));
      market.data.set_value(day, hour, kResDaFc,
                            market.data.value(day, hour, kSolarDaFc) +
                                market.data.value(day, hour, kWindOnDaFc) +
                                market.data.value(day, hour, kWindOffDaFc));
    }
  }

  // Futures curves: business-day quotes, settle = spot * contango factor^m.
  for (long d = 0; d < days; ++d) {
    Date day = start + std::chrono::days{d};
    if (weekday_index(day) >= 5) continue;
    for (auto& p : paths) {
      for (int m = 1; m <= 13; ++m) {
        FuturesQuote q;
        q.quote_date = day;
        q.commodity = p.commodity;
        q.maturity_months = m;
        q.settle = p.values[size_t(d)] * std::pow(1.002, m);
        market.futures.add(q);
      }
    }
  }
  return market;
}

void write_synthetic_csvs(const SyntheticMarket& market,
                          const std::string& hourly_path,
                          const std::string& futures_path) {
  std::ofstream out(hourly_path);
  if (!out) throw Error(ErrorCode::Internal, "cannot write " + hourly_path);
  out << "timestamp,price_eur_mwh,load_actual_mw,load_da_fc_mw,solar_actual_mw,"
         "solar_da_fc_mw,wind_on_actual_mw,wind_on_da_fc_mw,wind_off_actual_mw,"
         "wind_off_da_fc_mw\n";
  char buf[64];
  const HourlyDataset& data = market.data;
  for (Date day = data.start_day(); day <= data.end_day();
       day += std::chrono::days{1}) {
    bool spring = is_spring_transition_day(day);
    bool autumn = is_autumn_transition_day(day);
    for (int hour = 1; hour <= 24; ++hour) {
      if (spring && hour == 3) continue;  // local clock 02:00 does not exist
      int repeats = (autumn && hour == 3) ? 2 : 1;
      for (int rep = 0; rep < repeats; ++rep) {
        out << format_date(day);
        std::snprintf(buf, sizeof(buf), "T%02d:00", hour - 1);
        out << buf;
        for (int col = 0; col < kRawColumnCount; ++col) {
          std::snprintf(buf, sizeof(buf), ",%.17g", data.value(day, hour, col));
          out << buf;
        }
        out << "\n";
      }
    }
  }
  out.close();
  save_futures_store(market.futures, futures_path);
}

void generate_synthetic(const SyntheticOptions& options,
                        const std::string& hourly_path,
                        const std::string& futures_path) {
  write_synthetic_csvs(generate_synthetic_market(options), hourly_path, futures_path);
}

}  // namespace epf
