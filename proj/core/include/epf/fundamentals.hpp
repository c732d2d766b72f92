#pragma once

#include <limits>
#include <string>
#include <vector>

#include "epf/futures.hpp"

namespace epf {

enum class Technology { lignite, coal, gas, oil };

struct PlantCharacteristics {
  Technology technology;
  double efficiency_old;  // eta, MWh_el / MWh_th
  double efficiency_new;
  double co2_intensity;   // epsilon, tCO2 / MWh_th; 0 when untracked (oil)
  bool has_co2_intensity;
  double conversion;      // MWh_th per native fuel unit (1 for gas)
};

constexpr double kCoalMwhThPerTonne = 8.141;
// 1000 bbl = 1700 MWh_th (thousands separator in the source table), so 1.7 per bbl.
constexpr double kOilMwhThPerBbl = 1.7;

// Built-in plant characteristics table; overridable via the config file.
std::vector<PlantCharacteristics> default_plants();

// Variable generation cost in EUR/MWh_el. fuel_price is in the commodity's
// native units; the plant's conversion factor maps it to EUR/MWh_th.
double variable_cost(double fuel_price, double co2_price,
                     const PlantCharacteristics& plant, double other_cost = 0.0);

struct Interval {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
};

// Regressor groups carrying box constraints. Calendar dummies stay unbounded.
enum class BoundGroup { autoregressive, load, res, co2, gas, coal, oil, calendar };

struct CoefficientBounds {
  Interval autoregressive;
  Interval load;
  Interval res;
  Interval co2;
  Interval gas;
  Interval coal;
  Interval oil;
  Interval calendar;

  const Interval& group(BoundGroup g) const;
  Interval& group(BoundGroup g);
};

enum class BoundsMode { table4, appendixB };

CoefficientBounds derive_bounds(const std::vector<PlantCharacteristics>& plants,
                                BoundsMode mode);

struct SupplyUnit {
  double capacity_mw;
  double marginal_cost;  // EUR/MWh
};

// Marginal cost of the cheapest stack prefix covering demand.
double merit_order_price(double demand_mw, std::vector<SupplyUnit> stack);

}  // namespace epf
