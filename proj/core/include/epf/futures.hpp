#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "epf/dates.hpp"

namespace epf {

enum class Commodity { co2, gas, coal, oil };
constexpr int kCommodityCount = 4;

const char* commodity_name(Commodity c);
Commodity parse_commodity(const std::string& s);

struct FuturesQuote {
  Date quote_date;
  Commodity commodity;
  int maturity_months;  // 1..13, months from quote to delivery month
  double settle;        // EUR/tCO2, EUR/MWh_th, EUR/t, EUR/bbl
};

// Daily settlement curves by commodity; weekend/holiday gaps allowed.
class FuturesStore {
 public:
  void add(const FuturesQuote& quote);

  // Settle of the latest quote_date <= date carrying the requested maturity.
  // Carry-forward capped at 10 calendar days, else StaleQuote.
  double last_quote_on_or_before(Date date, Commodity commodity,
                                 int maturity_months) const;

  // Mean settle over quote dates in (end - days, end] carrying the requested
  // maturity. InsufficientHistory if no such quotes exist.
  double trailing_mean(Date end, Commodity commodity, int maturity_months,
                       int days) const;

  bool empty(Commodity commodity) const;
  Date first_quote_date(Commodity commodity) const;

  const std::vector<FuturesQuote>& quotes() const { return quotes_; }

  static constexpr int kCarryForwardDays = 10;

 private:
  // per commodity: quote_date -> (maturity -> settle)
  std::array<std::map<Date, std::map<int, double>>, kCommodityCount> curves_;
  std::vector<FuturesQuote> quotes_;
};

FuturesStore parse_futures_csv(const std::string& path);
void save_futures_store(const FuturesStore& store, const std::string& path);

}  // namespace epf
