#pragma once

#include <string>
#include <vector>

namespace epf {

// Minimal delimited-text reader. No quoting: none of the project's file
// formats embed commas in fields.
class CsvReader {
 public:
  explicit CsvReader(const std::string& path);

  // Header as read from the first line.
  const std::vector<std::string>& header() const { return header_; }

  // Reads the next data row into `fields`; returns false at EOF.
  // Throws MalformedRow when the field count differs from the header.
  bool next(std::vector<std::string>& fields);

  int line_number() const { return line_; }

 private:
  std::string path_;
  std::vector<std::string> lines_;
  std::vector<std::string> header_;
  size_t pos_ = 0;
  int line_ = 1;
};

std::vector<std::string> split_fields(const std::string& line, char delim = ',');

// Requires the header to match `expected` exactly, else UnknownColumn.
void require_header(const CsvReader& reader, const std::vector<std::string>& expected,
                    const std::string& path);

}  // namespace epf
