#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "doctest.h"
#include "epf/error.hpp"
#include "epf/fundamentals.hpp"

using namespace epf;

namespace {

const PlantCharacteristics& plant(Technology t) {
  static const auto plants = default_plants();
  for (const auto& p : plants) {
    if (p.technology == t) return p;
  }
  throw std::runtime_error("missing technology");
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_SUITE("fundamentals") {

TEST_CASE("variable cost combines fuel, carbon, and other costs") {
  PlantCharacteristics p{Technology::gas, 0.4, 0.6, 0.2, true, 1.0};
  // 20/0.4 + 0.2*30/0.4 = 50 + 15
  CHECK(variable_cost(20.0, 30.0, p, 0.0) == doctest::Approx(65.0));

  PlantCharacteristics ident{Technology::gas, 1.0, 1.0, 0.0, true, 1.0};
  CHECK(variable_cost(42.5, 99.0, ident, 0.0) == doctest::Approx(42.5));

  PlantCharacteristics coal{Technology::coal, 0.46, 0.46, 0.3, true, kCoalMwhThPerTonne};
  CHECK(variable_cost(100.0, 30.0, coal, 0.0) ==
        doctest::Approx((100.0 / 8.141) / 0.46 + 0.3 * 30.0 / 0.46).epsilon(1e-6));
  CHECK(variable_cost(100.0, 30.0, coal, 0.0) == doctest::Approx(46.27).epsilon(1e-3));

  // other_cost is purely additive
  CHECK(variable_cost(20.0, 30.0, p, 2.5) == doctest::Approx(67.5));

  PlantCharacteristics bad{Technology::gas, 0.0, 0.0, 0.2, true, 1.0};
  try {
    variable_cost(20.0, 30.0, bad, 0.0);
    FAIL("expected DivisionByZero");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DivisionByZero);
  }
}

TEST_CASE("built-in plant table carries both efficiencies and conversions") {
  auto plants = default_plants();
  REQUIRE(plants.size() == 4);
  for (const auto& p : plants) {
    CHECK(p.efficiency_old > 0);
    CHECK(p.efficiency_old <= 1);
    CHECK(p.efficiency_new >= p.efficiency_old);
    CHECK(p.conversion > 0);
  }
  CHECK(plant(Technology::coal).conversion == doctest::Approx(kCoalMwhThPerTonne));
  CHECK(plant(Technology::oil).conversion == doctest::Approx(kOilMwhThPerBbl));
  CHECK(plant(Technology::gas).conversion == doctest::Approx(1.0));
  CHECK_FALSE(plant(Technology::oil).has_co2_intensity);
}

TEST_CASE("published-mode bounds match the documented defaults exactly") {
  auto b = derive_bounds(default_plants(), BoundsMode::table4);
  CHECK(b.autoregressive.lower == 0.0);
  CHECK(std::isinf(b.autoregressive.upper));
  CHECK(b.load.lower == 0.0);
  CHECK(std::isinf(b.load.upper));
  CHECK(b.res.lower == -kInf);
  CHECK(b.res.upper == 0.0);
  CHECK(b.co2.lower == 0.0);
  CHECK(b.co2.upper == 1.33);
  CHECK(b.gas.lower == 0.0);
  CHECK(b.gas.upper == 4.0);
  CHECK(b.coal.lower == 0.0);
  CHECK(b.coal.upper == 0.123);
  CHECK(b.oil.lower == 0.0);
  CHECK(b.oil.upper == 0.588);
  CHECK(b.calendar.lower == -kInf);
  CHECK(std::isinf(b.calendar.upper));
}

TEST_CASE("derived-mode bounds come from the worst heat rate per technology") {
  auto b = derive_bounds(default_plants(), BoundsMode::appendixB);
  // gas: 1/0.25 exactly; co2: 0.4/0.3 exactly (lignite is the worst emitter)
  CHECK(b.gas.upper == 4.0);
  CHECK(b.co2.upper == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  // coal and oil fold in the native-unit conversion factors
  CHECK(b.coal.upper == doctest::Approx((1.0 / 0.35) / kCoalMwhThPerTonne).epsilon(1e-12));
  CHECK(b.oil.upper == doctest::Approx((1.0 / 0.24) / kOilMwhThPerBbl).epsilon(1e-12));
  CHECK(b.oil.upper == doctest::Approx(2.45098).epsilon(1e-4));
  CHECK(b.res.upper == 0.0);
  CHECK(b.gas.lower == 0.0);
}

TEST_CASE("derived bounds dominate every individual plant ratio") {
  auto plants = default_plants();
  auto b = derive_bounds(plants, BoundsMode::appendixB);
  for (const auto& p : plants) {
    for (double eta : {p.efficiency_old, p.efficiency_new}) {
      if (p.technology == Technology::gas) CHECK(b.gas.upper >= 1.0 / eta - 1e-12);
      if (p.technology == Technology::coal) {
        CHECK(b.coal.upper >= (1.0 / eta) / p.conversion - 1e-12);
      }
      if (p.technology == Technology::oil) {
        CHECK(b.oil.upper >= (1.0 / eta) / p.conversion - 1e-12);
      }
      if (p.has_co2_intensity) CHECK(b.co2.upper >= p.co2_intensity / eta - 1e-12);
    }
  }
  CHECK_THROWS_AS(derive_bounds({}, BoundsMode::appendixB), Error);
}

TEST_CASE("all bounded groups are non-degenerate") {
  for (auto mode : {BoundsMode::table4, BoundsMode::appendixB}) {
    auto b = derive_bounds(default_plants(), mode);
    for (auto g : {BoundGroup::autoregressive, BoundGroup::load, BoundGroup::res,
                   BoundGroup::co2, BoundGroup::gas, BoundGroup::coal, BoundGroup::oil,
                   BoundGroup::calendar}) {
      CHECK(b.group(g).lower < b.group(g).upper);
    }
  }
}

TEST_CASE("merit-order price is the cost of the marginal stack prefix") {
  std::vector<SupplyUnit> stack = {{10, 5}, {10, 50}};
  CHECK(merit_order_price(0, stack) == doctest::Approx(5));
  CHECK(merit_order_price(15, stack) == doctest::Approx(50));
  CHECK(merit_order_price(10, stack) == doctest::Approx(5));  // boundary: prefix covers
  // Unsorted input is sorted internally.
  std::vector<SupplyUnit> shuffled = {{10, 50}, {10, 5}};
  CHECK(merit_order_price(15, shuffled) == doctest::Approx(50));
  try {
    merit_order_price(25, stack);
    FAIL("expected Scarcity");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Scarcity);
  }
}

TEST_CASE("single-technology price regression recovers heat rate and carbon rate") {
  // Price = cost of a single gas technology: gas/eta + eps*co2/eta with
  // eta = 0.4, eps = 0.2 -> coefficients 2.5 and 0.5 exactly.
  PlantCharacteristics p{Technology::gas, 0.4, 0.4, 0.2, true, 1.0};
  const int n = 200;
  Eigen::MatrixXd X(n, 2);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    double gas = 15.0 + 0.1 * i;
    double co2 = 20.0 + 0.05 * (i % 37);
    X(i, 0) = gas;
    X(i, 1) = co2;
    std::vector<SupplyUnit> stack = {{50000, variable_cost(gas, co2, p)}};
    y(i) = merit_order_price(30000, stack);
  }
  Eigen::MatrixXd A(n, 3);
  A.col(0).setOnes();
  A.col(1) = X.col(0);
  A.col(2) = X.col(1);
  Eigen::Vector3d beta = (A.transpose() * A).ldlt().solve(A.transpose() * y);
  CHECK(std::abs(beta(0)) < 1e-10);
  CHECK(beta(1) == doctest::Approx(2.5).epsilon(1e-10));
  CHECK(beta(2) == doctest::Approx(0.5).epsilon(1e-10));
}

}  // TEST_SUITE
