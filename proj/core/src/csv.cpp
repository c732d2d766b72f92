#include "epf/csv.hpp"

#include <fstream>

#include "epf/error.hpp"

namespace epf {

std::vector<std::string> split_fields(const std::string& line, char delim) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = line.find(delim, start);
    std::string field = line.substr(start, pos == std::string::npos ? pos : pos - start);
    // trim surrounding whitespace
    size_t b = field.find_first_not_of(" \t\r");
    size_t e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

CsvReader::CsvReader(const std::string& path) : path_(path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::EmptyInput, "cannot open " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines_.push_back(line);
  }
  if (lines_.empty()) throw Error(ErrorCode::EmptyInput, path + " is empty");
  header_ = split_fields(lines_[0]);
  pos_ = 1;
}

bool CsvReader::next(std::vector<std::string>& fields) {
  if (pos_ >= lines_.size()) return false;
  line_ = int(pos_) + 1;
  fields = split_fields(lines_[pos_++]);
  if (fields.size() != header_.size()) {
    throw Error(ErrorCode::MalformedRow,
                path_ + ":" + std::to_string(line_) + " has " +
                    std::to_string(fields.size()) + " fields, expected " +
                    std::to_string(header_.size()));
  }
  return true;
}

void require_header(const CsvReader& reader, const std::vector<std::string>& expected,
                    const std::string& path) {
  if (reader.header() != expected) {
    std::string got;
    for (const auto& h : reader.header()) got += h + ",";
    throw Error(ErrorCode::UnknownColumn, path + " header mismatch, got: " + got);
  }
}

}  // namespace epf
