#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "dlip/io.hpp"
#include "dlip/verify.hpp"

using namespace dlip;

TEST_CASE("code documents round trip on every ring family") {
  for (const char* spec : {"F:7", "Z:2^3", "Fgamma:5^2", "U:2", "CRT(Z:2^2,F:3)"}) {
    CAPTURE(spec);
    auto r = Ring::parse(spec);
    for (const auto& c : all_submodules(r, 1)) {
      const auto j = code_to_json(c);
      CHECK(j["version"] == kSchemaVersion);
      CHECK(code_from_json(j).same_elements(c));
      CHECK(code_from_json(nlohmann::json::parse(j.dump())).same_elements(c));
    }
  }
}

TEST_CASE("elements may be integers or element strings") {
  const auto j = nlohmann::json::parse(R"({"ring": "Z:2^2", "n": 2, "generators": [[1, "2"], [-1, 0]]})");
  const Code c = code_from_json(j);
  CHECK(c.contains({1, 2}));
  CHECK(c.contains({3, 0}));
  CHECK(c.contains({1, 0}));
  CHECK(dim(c).value() == 3);
  const Code empty = code_from_json(nlohmann::json::parse(R"({"ring": "U:2", "n": 3, "generators": []})"));
  CHECK(empty.elements().size() == 1);
  CHECK(empty.length() == 3);
}

TEST_CASE("malformed documents are parse errors") {
  auto kind = [](const char* text) {
    try {
      code_from_json(nlohmann::json::parse(text));
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::IoError;
  };
  CHECK(kind(R"({"n": 1, "generators": []})") == ErrorKind::ParseError);
  CHECK(kind(R"({"ring": "Z:2^2", "generators": []})") == ErrorKind::ParseError);
  CHECK(kind(R"({"ring": "Z:2^2", "n": 2, "generators": [["1"]]})") == ErrorKind::ParseError);
  CHECK(kind(R"({"ring": "Z:2^2", "n": 1, "generators": [[true]]})") == ErrorKind::ParseError);
  CHECK(kind(R"({"version": 2, "ring": "Z:2^2", "n": 1, "generators": []})") == ErrorKind::ParseError);
  CHECK(kind(R"({"ring": "Z:6^2", "n": 1, "generators": []})") == ErrorKind::NonPrimeModulus);
}

TEST_CASE("code files") {
  const auto path = (std::filesystem::temp_directory_path() / "dlip_test_io_code.json").string();
  auto r = Ring::parse("Fgamma:5^2");
  const Code c(Matrix::from_rows(r, 3, {{r->parse_element("1"), r->parse_element("g"), r->parse_element("2+3g")}}));
  write_code_file(path, c);
  CHECK(read_code_file(path).same_elements(c));
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_code_file(path), Error);
  try {
    read_code_file(path);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IoError);
  }
  CHECK_THROWS_AS(write_code_file("/nonexistent-dir/x.json", c), Error);
}

TEST_CASE("constacyclic documents round trip") {
  auto r = Ring::parse("Z:2^2");
  const auto ctx = ConstacyclicContext::get(r, 7, r->from_int(-1));
  for (const auto& c : all_towers(ctx)) {
    const auto j = constacyclic_to_json(c);
    CHECK(constacyclic_from_json(j) == c);
    CHECK(constacyclic_from_json(nlohmann::json::parse(j.dump())) == c);
  }
  const auto j = nlohmann::json::parse(R"({"version": 1, "ring": "Z:2^2", "n": 7, "lambda": -1, "tower": "D0=1,2;D1=2"})");
  const auto c = constacyclic_from_json(j);
  CHECK(format_generators(c) == "<(x^3+2x^2+x+1)*(x^3+x^2+2x+1), 2*(x^3+x^2+2x+1)>");
  CHECK(constacyclic_to_json(c)["factors"] ==
        nlohmann::json::array({"x+1", "x^3+2x^2+x+1", "x^3+x^2+2x+1"}));
  CHECK_THROWS_AS(constacyclic_from_json(nlohmann::json::parse(R"({"ring": "Z:2^2", "n": 7, "tower": "D0="})")),
                  Error);
}

TEST_CASE("poly and matrix documents") {
  auto r = Ring::parse("Fgamma:5^2");
  CHECK(poly_to_json(parse_poly(r, "x^2+gx+(2+3g)")) == nlohmann::json::array({"[2,3]", "[0,1]", "[1,0]"}));
  const Matrix m = Matrix::from_rows(r, 2, {{0, 6}});
  CHECK(matrix_to_json(m) == nlohmann::json::parse(R"([["[0,0]", "[1,1]"]])"));
}

TEST_CASE("verification suites and result lines") {
  CHECK(suite_criteria("all").size() == kCriterionCount);
  CHECK(suite_criteria("gray") == std::vector<int>{8, 9});
  CHECK_THROWS_AS(suite_criteria("everything"), Error);
  CHECK_THROWS_AS(run_criterion(0, {}), Error);
  const auto r = run_criterion(1, {});
  CHECK(r.passed());
  CHECK(r.line().rfind("PASS 1 ", 0) == 0);
  CHECK(r.to_json()["passed"] == true);
  CriterionResult slow = r;
  slow.seconds = slow.limit_seconds + 1;
  CHECK_FALSE(slow.passed());
  CHECK(slow.line().find("over time limit") != std::string::npos);
}
