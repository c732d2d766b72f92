#pragma once

#include <map>
#include <string>
#include <vector>

namespace epf {

// Plain key=value file; '#' comments and blank lines allowed; unknown keys
// rejected against `known_keys`.
std::map<std::string, std::string> parse_config_file(
    const std::string& path, const std::vector<std::string>& known_keys);

std::vector<std::string> split_list(const std::string& s, char sep = ',');
std::vector<int> parse_int_list(const std::string& s);

// MIDTERM_EPF_THREADS fallback; 1 when unset or unparsable.
int default_thread_count();

}  // namespace epf
