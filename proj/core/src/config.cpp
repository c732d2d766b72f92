#include "epf/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "epf/error.hpp"

namespace epf {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::UnknownColumn: return "UnknownColumn";
    case ErrorCode::DuplicateRow: return "DuplicateRow";
    case ErrorCode::MissingData: return "MissingData";
    case ErrorCode::InvalidMaturity: return "InvalidMaturity";
    case ErrorCode::NonPositiveSettle: return "NonPositiveSettle";
    case ErrorCode::StaleQuote: return "StaleQuote";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::Scarcity: return "Scarcity";
    case ErrorCode::DegenerateResponse: return "DegenerateResponse";
    case ErrorCode::SingularFit: return "SingularFit";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InsufficientHistory: return "InsufficientHistory";
    case ErrorCode::DegenerateVariance: return "DegenerateVariance";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::map<std::string, std::string> parse_config_file(
    const std::string& path, const std::vector<std::string>& known_keys) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::EmptyInput, "cannot open config " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::InvalidConfig,
                  path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (std::find(known_keys.begin(), known_keys.end(), key) == known_keys.end()) {
      throw Error(ErrorCode::InvalidConfig,
                  path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (out.count(key)) {
      throw Error(ErrorCode::InvalidConfig,
                  path + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    out[key] = value;
  }
  return out;
}

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      if (!cur.empty()) out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& item : split_list(s)) {
    try {
      size_t pos = 0;
      int v = std::stoi(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidConfig, "bad integer '" + item + "' in list");
    }
  }
  return out;
}

int default_thread_count() {
  const char* env = std::getenv("MIDTERM_EPF_THREADS");
  if (!env) return 1;
  try {
    int v = std::stoi(env);
    return v >= 1 ? v : 1;
  } catch (const std::exception&) {
    return 1;
  }
}

}  // namespace epf
