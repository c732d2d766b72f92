#include <cstdlib>
#include <string>

#include "doctest.h"
#include "epf/config.hpp"
#include "epf/error.hpp"
#include "test_util.hpp"

using namespace epf;

namespace {

const std::vector<std::string> kKeys = {"models", "horizons", "threads", "out_dir"};

std::string config_with(const std::string& body) {
  std::string dir = epf_test::temp_dir("config");
  std::string path = dir + "/run.conf";
  epf_test::write_file(path, body);
  return path;
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("key=value parsing with comments and blanks") {
  std::string path = config_with(
      "# run configuration\n"
      "\n"
      "models = constr, expert\n"
      "  horizons=1,30,180\t\n"
      "threads = 2\n");
  auto cfg = parse_config_file(path, kKeys);
  REQUIRE(cfg.size() == 3);
  CHECK(cfg.at("models") == "constr, expert");
  CHECK(cfg.at("horizons") == "1,30,180");
  CHECK(cfg.at("threads") == "2");
  CHECK(cfg.count("out_dir") == 0);
}

TEST_CASE("unknown keys, duplicates and malformed lines carry line numbers") {
  auto expect_invalid = [](const std::string& body, const std::string& fragment) {
    std::string path = config_with(body);
    try {
      parse_config_file(path, kKeys);
      FAIL("expected InvalidConfig for: " << body);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidConfig);
      CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
  };
  expect_invalid("models=constr\nwindow=420\n", ":2: unknown key 'window'");
  expect_invalid("threads=1\nthreads=2\n", ":2: duplicate key 'threads'");
  expect_invalid("models=constr\njust words\n", ":2: expected key=value");
  CHECK_THROWS_AS(parse_config_file("/no/such/file.conf", kKeys), Error);
}

TEST_CASE("list splitting trims and drops empty items") {
  CHECK(split_list("a,b,c") == std::vector<std::string>{"a", "b", "c"});
  CHECK(split_list(" a , b ") == std::vector<std::string>{"a", "b"});
  CHECK(split_list("a,,b,") == std::vector<std::string>{"a", "b"});
  CHECK(split_list("") == std::vector<std::string>{});
  CHECK(split_list("a;b", ';') == std::vector<std::string>{"a", "b"});
}

TEST_CASE("integer lists parse fully or not at all") {
  CHECK(parse_int_list("1,30,180") == std::vector<int>{1, 30, 180});
  CHECK(parse_int_list(" 7 , 14 ") == std::vector<int>{7, 14});
  CHECK(parse_int_list("") == std::vector<int>{});
  CHECK_THROWS_AS(parse_int_list("1,x,3"), Error);
  CHECK_THROWS_AS(parse_int_list("1,2.5"), Error);
}

TEST_CASE("thread count env fallback") {
  unsetenv("MIDTERM_EPF_THREADS");
  CHECK(default_thread_count() == 1);
  setenv("MIDTERM_EPF_THREADS", "3", 1);
  CHECK(default_thread_count() == 3);
  setenv("MIDTERM_EPF_THREADS", "0", 1);
  CHECK(default_thread_count() == 1);
  setenv("MIDTERM_EPF_THREADS", "abc", 1);
  CHECK(default_thread_count() == 1);
  unsetenv("MIDTERM_EPF_THREADS");
}

TEST_CASE("error codes render stable names") {
  CHECK(std::string(error_code_name(ErrorCode::StaleQuote)) == "StaleQuote");
  CHECK(std::string(error_code_name(ErrorCode::InvalidConfig)) == "InvalidConfig");
  Error e(ErrorCode::MissingData, "gap");
  CHECK(std::string(e.what()).find("MissingData") != std::string::npos);
  CHECK(std::string(e.what()).find("gap") != std::string::npos);
}

}  // TEST_SUITE
