#include "doctest.h"
#include "epf/csv.hpp"
#include "epf/error.hpp"
#include "test_util.hpp"

using namespace epf;

TEST_SUITE("csv") {

TEST_CASE("reads header and rows, tracks line numbers") {
  auto dir = epf_test::temp_dir("csv_basic");
  epf_test::write_file(dir / "f.csv", "a,b,c\n1,2,3\n4,5,6\n");
  CsvReader r((dir / "f.csv").string());
  CHECK(r.header() == std::vector<std::string>{"a", "b", "c"});
  std::vector<std::string> fields;
  REQUIRE(r.next(fields));
  CHECK(fields == std::vector<std::string>{"1", "2", "3"});
  CHECK(r.line_number() == 2);
  REQUIRE(r.next(fields));
  CHECK(fields[2] == "6");
  CHECK_FALSE(r.next(fields));
}

TEST_CASE("field-count mismatch raises MalformedRow with the line number") {
  auto dir = epf_test::temp_dir("csv_malformed");
  epf_test::write_file(dir / "f.csv", "a,b\n1,2\n1,2,3\n");
  CsvReader r((dir / "f.csv").string());
  std::vector<std::string> fields;
  REQUIRE(r.next(fields));
  try {
    r.next(fields);
    FAIL("expected MalformedRow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedRow);
    CHECK(std::string(e.what()).find("3") != std::string::npos);
  }
}

TEST_CASE("missing file is an error") {
  CHECK_THROWS_AS(CsvReader("/nonexistent/nope.csv"), Error);
}

TEST_CASE("split_fields keeps empty fields") {
  CHECK(split_fields("a,,c") == std::vector<std::string>{"a", "", "c"});
  CHECK(split_fields("x") == std::vector<std::string>{"x"});
  CHECK(split_fields(",") == std::vector<std::string>{"", ""});
}

TEST_CASE("require_header rejects unknown columns") {
  auto dir = epf_test::temp_dir("csv_header");
  epf_test::write_file(dir / "f.csv", "a,b,extra\n1,2,3\n");
  CsvReader r((dir / "f.csv").string());
  try {
    require_header(r, {"a", "b"}, "f.csv");
    FAIL("expected UnknownColumn");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownColumn);
  }
}

}  // TEST_SUITE
