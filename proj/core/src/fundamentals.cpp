#include "epf/fundamentals.hpp"

#include <algorithm>

#include "epf/error.hpp"

namespace epf {

std::vector<PlantCharacteristics> default_plants() {
  return {
      {Technology::lignite, 0.30, 0.43, 0.40, true, 1.0},
      {Technology::coal, 0.35, 0.46, 0.30, true, kCoalMwhThPerTonne},
      {Technology::gas, 0.25, 0.40, 0.20, true, 1.0},
      {Technology::oil, 0.24, 0.44, 0.0, false, kOilMwhThPerBbl},
  };
}

double variable_cost(double fuel_price, double co2_price,
                     const PlantCharacteristics& plant, double other_cost) {
  if (plant.efficiency_old == 0.0) {
    throw Error(ErrorCode::DivisionByZero, "plant efficiency is zero");
  }
  double eta = plant.efficiency_old;
  double fuel_th = fuel_price / plant.conversion;  // EUR per MWh_th
  double eps = plant.has_co2_intensity ? plant.co2_intensity : 0.0;
  return fuel_th / eta + eps * co2_price / eta + other_cost;
}

const Interval& CoefficientBounds::group(BoundGroup g) const {
  switch (g) {
    case BoundGroup::autoregressive: return autoregressive;
    case BoundGroup::load: return load;
    case BoundGroup::res: return res;
    case BoundGroup::co2: return co2;
    case BoundGroup::gas: return gas;
    case BoundGroup::coal: return coal;
    case BoundGroup::oil: return oil;
    case BoundGroup::calendar: return calendar;
  }
  throw Error(ErrorCode::Internal, "bad bound group");
}

Interval& CoefficientBounds::group(BoundGroup g) {
  return const_cast<Interval&>(const_cast<const CoefficientBounds*>(this)->group(g));
}

CoefficientBounds derive_bounds(const std::vector<PlantCharacteristics>& plants,
                                BoundsMode mode) {
  if (plants.empty()) throw Error(ErrorCode::EmptyInput, "no plant characteristics");

  const double inf = std::numeric_limits<double>::infinity();
  CoefficientBounds b;
  b.autoregressive = {0.0, inf};
  b.load = {0.0, inf};
  b.res = {-inf, 0.0};
  b.calendar = {-inf, inf};

  if (mode == BoundsMode::table4) {
    // Published Table-4 row, the configuration the study actually ran with.
    b.co2 = {0.0, 1.33};
    b.gas = {0.0, 4.0};
    b.coal = {0.0, 0.123};
    b.oil = {0.0, 0.588};
    return b;
  }

  // Appendix-B arithmetic: per-commodity max of heat rate 1/eta (unit
  // conversion applied), CO2 bound is max of eps/eta over all fossil plants.
  double co2_upper = 0.0, gas_upper = 0.0, coal_upper = 0.0, oil_upper = 0.0;
  for (const auto& p : plants) {
    for (double eta : {p.efficiency_old, p.efficiency_new}) {
      if (eta <= 0.0) throw Error(ErrorCode::DivisionByZero, "non-positive efficiency");
      if (p.has_co2_intensity) co2_upper = std::max(co2_upper, p.co2_intensity / eta);
      double heat_rate_native = 1.0 / eta / p.conversion;  // native fuel unit per MWh_el
      switch (p.technology) {
        case Technology::gas: gas_upper = std::max(gas_upper, heat_rate_native); break;
        case Technology::coal: coal_upper = std::max(coal_upper, heat_rate_native); break;
        case Technology::oil: oil_upper = std::max(oil_upper, heat_rate_native); break;
        case Technology::lignite: break;  // no tradable lignite future
      }
    }
  }
  b.co2 = {0.0, co2_upper};
  b.gas = {0.0, gas_upper};
  b.coal = {0.0, coal_upper};
  b.oil = {0.0, oil_upper};
  return b;
}

double merit_order_price(double demand_mw, std::vector<SupplyUnit> stack) {
  if (stack.empty()) throw Error(ErrorCode::EmptyInput, "empty supply stack");
  if (demand_mw < 0) throw Error(ErrorCode::InvalidConfig, "negative demand");
  std::sort(stack.begin(), stack.end(),
            [](const SupplyUnit& a, const SupplyUnit& b) {
              return a.marginal_cost < b.marginal_cost;
            });
  double cumulative = 0.0;
  for (const auto& unit : stack) {
    cumulative += unit.capacity_mw;
    if (cumulative >= demand_mw) return unit.marginal_cost;
  }
  throw Error(ErrorCode::Scarcity, "demand exceeds total capacity");
}

}  // namespace epf
