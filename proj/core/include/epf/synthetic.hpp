#pragma once

#include <cstdint>
#include <string>

#include "epf/futures.hpp"
#include "epf/ingest.hpp"

namespace epf {

struct SyntheticOptions {
  int years = 6;            // whole calendar years starting Jan 1
  int start_year = 2015;
  std::uint64_t seed = 1;
  bool zero_noise = false;  // deterministic fuels/load/RES, price = merit order
  double price_noise_sigma = 1.0;  // EUR/MWh
};

struct SyntheticMarket {
  HourlyDataset data;
  FuturesStore futures;
};

// Marginal system price of the built-in 3-technology stack (gas/coal/lignite).
double synthetic_merit_price(double gas_price, double coal_price, double co2_price,
                             double residual_demand_mw);

SyntheticMarket generate_synthetic_market(const SyntheticOptions& options);

// Raw CSV fixtures in the ingest formats; the hourly file carries clock-change
// artifacts (spring hour omitted, autumn hour duplicated).
void write_synthetic_csvs(const SyntheticMarket& market,
                          const std::string& hourly_path,
                          const std::string& futures_path);

void generate_synthetic(const SyntheticOptions& options,
                        const std::string& hourly_path,
                        const std::string& futures_path);

}  // namespace epf
