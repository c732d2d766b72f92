#include "epf/futures.hpp"

#include <cstdio>
#include <fstream>

#include "epf/csv.hpp"
#include "epf/error.hpp"

namespace epf {

const char* commodity_name(Commodity c) {
  switch (c) {
    case Commodity::co2: return "co2";
    case Commodity::gas: return "gas";
    case Commodity::coal: return "coal";
    case Commodity::oil: return "oil";
  }
  return "?";
}

Commodity parse_commodity(const std::string& s) {
  if (s == "co2") return Commodity::co2;
  if (s == "gas") return Commodity::gas;
  if (s == "coal") return Commodity::coal;
  if (s == "oil") return Commodity::oil;
  throw Error(ErrorCode::MalformedRow, "unknown commodity '" + s + "'");
}

void FuturesStore::add(const FuturesQuote& quote) {
  if (quote.maturity_months < 1 || quote.maturity_months > 13) {
    throw Error(ErrorCode::InvalidMaturity,
                "maturity " + std::to_string(quote.maturity_months) + " outside 1..13");
  }
  if (!(quote.settle > 0)) {
    throw Error(ErrorCode::NonPositiveSettle,
                "settle " + std::to_string(quote.settle) + " on " +
                    format_date(quote.quote_date));
  }
  auto& curve = curves_[size_t(quote.commodity)][quote.quote_date];
  if (curve.count(quote.maturity_months)) {
    throw Error(ErrorCode::DuplicateRow,
                std::string("duplicate quote ") + commodity_name(quote.commodity) + " " +
                    format_date(quote.quote_date) + " m" +
                    std::to_string(quote.maturity_months));
  }
  curve[quote.maturity_months] = quote.settle;
  quotes_.push_back(quote);
}

double FuturesStore::last_quote_on_or_before(Date date, Commodity commodity,
                                             int maturity_months) const {
  const auto& by_date = curves_[size_t(commodity)];
  if (by_date.empty()) {
    throw Error(ErrorCode::StaleQuote,
                std::string("no quotes for ") + commodity_name(commodity));
  }
  auto it = by_date.upper_bound(date);
  while (it != by_date.begin()) {
    --it;
    if ((date - it->first).count() > kCarryForwardDays) break;
    auto m = it->second.find(maturity_months);
    if (m != it->second.end()) return m->second;
  }
  throw Error(ErrorCode::StaleQuote,
              std::string(commodity_name(commodity)) + " m" +
                  std::to_string(maturity_months) + " has no quote within " +
                  std::to_string(kCarryForwardDays) + " days of " + format_date(date));
}

double FuturesStore::trailing_mean(Date end, Commodity commodity,
                                   int maturity_months, int days) const {
  const auto& by_date = curves_[size_t(commodity)];
  Date lo = end - std::chrono::days{days - 1};
  double sum = 0.0;
  int n = 0;
  for (auto it = by_date.lower_bound(lo); it != by_date.end() && it->first <= end;
       ++it) {
    auto m = it->second.find(maturity_months);
    if (m != it->second.end()) {
      sum += m->second;
      ++n;
    }
  }
  if (n == 0) {
    throw Error(ErrorCode::InsufficientHistory,
                std::string(commodity_name(commodity)) + " m" +
                    std::to_string(maturity_months) + " has no quotes in the " +
                    std::to_string(days) + " days ending " + format_date(end));
  }
  return sum / double(n);
}

bool FuturesStore::empty(Commodity commodity) const {
  return curves_[size_t(commodity)].empty();
}

Date FuturesStore::first_quote_date(Commodity commodity) const {
  const auto& by_date = curves_[size_t(commodity)];
  if (by_date.empty()) {
    throw Error(ErrorCode::StaleQuote,
                std::string("no quotes for ") + commodity_name(commodity));
  }
  return by_date.begin()->first;
}

FuturesStore parse_futures_csv(const std::string& path) {
  CsvReader reader(path);
  require_header(reader, {"quote_date", "commodity", "maturity_months", "settle"}, path);
  FuturesStore store;
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    FuturesQuote q;
    q.quote_date = parse_date(fields[0]);
    q.commodity = parse_commodity(fields[1]);
    q.maturity_months = std::stoi(fields[2]);
    q.settle = std::stod(fields[3]);
    store.add(q);
  }
  return store;
}

void save_futures_store(const FuturesStore& store, const std::string& path) {
  std::ofstream outfile(path);
  if (!outfile) throw Error(ErrorCode::Internal, "cannot write " + path);
  outfile << "quote_date,commodity,maturity_months,settle\n";
  char buf[32];
  for (const auto& q : store.quotes()) {
    std::snprintf(buf, sizeof(buf), "%.17g", q.settle);
    outfile << format_date(q.quote_date) << "," << commodity_name(q.commodity) << ","
            << q.maturity_months << "," << buf << "\n";
  }
}

}  // namespace epf
