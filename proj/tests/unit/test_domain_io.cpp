#include <cmath>
#include <numbers>
#include <string>
#include <tuple>

#include "doctest.h"
#include "wedgebound/domain_io.hpp"
#include "wedgebound/errors.hpp"

using namespace wedgebound;
using std::numbers::pi;

namespace {

// Message and line of the ParseError thrown by parse_domain.
std::pair<std::string, int> failure(const std::string& text) {
  try {
    parse_domain(text, "t.json");
  } catch (const ParseError& e) {
    return {e.what(), e.line()};
  }
  return {"", 0};
}

}  // namespace

TEST_CASE("polygon with slit and pose") {
  const Domain d = parse_domain(R"({
    "shape": "polygon",
    "vertices": [[-1, -1], [1, -1], [1, 1], [-1, 1]],
    "slits": [[[-1, 0], [0, 0]]],
    "pose": {"origin": [0.25, 0], "rotation": 0.5},
    "name": "slit square"
  })");
  CHECK(area(d) == doctest::Approx(4.0));
  CHECK(d.pose().origin.x == 0.25);
  CHECK(d.pose().rotation == 0.5);
}

TEST_CASE("errors carry the line of the offending value") {
  auto [msg, line] = failure("{\"shape\": \"disc\",\n \"radius\": -1}");
  CHECK(line == 2);
  CHECK(msg.rfind("t.json:2:", 0) == 0);

  std::tie(msg, line) = failure("{\"shape\": \"disc\",\n \"radius\": 1,\n\n \"colour\": 3}");
  CHECK(line == 4);
  CHECK(msg.find("colour") != std::string::npos);

  std::tie(msg, line) = failure("{\"shape\": \"polygon\",\n \"vertices\": [[0,0],[1,0],\n [1,1],[0,1],[1,-1]]}");
  CHECK(line == 2);  // self-intersection anchored to the vertex list

  std::tie(msg, line) = failure("{\"shape\": \"disc\",\n \"radius\": 1,,\n}");
  CHECK(line == 2);  // syntax error
}

TEST_CASE("missing or mistyped fields are reported") {
  CHECK(failure(R"({"radius": 1})").first.find("shape") != std::string::npos);
  CHECK(failure(R"({"shape": "disc", "radius": "one"})").first.find("radius") != std::string::npos);
  CHECK(failure(R"({"shape": "hexagon"})").second == 1);
  CHECK(failure("[1, 2]").first.find("object") != std::string::npos);
}

TEST_CASE("built-ins") {
  CHECK(area(builtin_domain("@D0")) == doctest::Approx(4.0));
  CHECK(area(builtin_domain("@D1")) == doctest::Approx(4.0));
  CHECK(area(builtin_domain("@D2-literal")) == doctest::Approx(1.0));
  CHECK(area(builtin_domain("@D2-area4")) == doctest::Approx(4.0));
  CHECK(area(builtin_domain("@cut-disc:2")) == doctest::Approx(4 * pi));
  CHECK(area(builtin_domain("@sector:1.5,1")) == doctest::Approx(2 * pi / 3));
  CHECK(area(builtin_domain("@annulus:1,1,2")) == doctest::Approx(3 * pi));
  CHECK_THROWS_AS(builtin_domain("@D9"), ParseError);
  CHECK_THROWS_AS(builtin_domain("@sector:1.5"), ParseError);
  CHECK_THROWS_AS(builtin_domain("@cut-disc:x"), ParseError);
  CHECK_FALSE(builtin_names().empty());
  CHECK(load_domain("@D1").id == "@D1");
  CHECK_THROWS_AS(load_domain("/no/such/file.json"), ParseError);
}

TEST_CASE("serialisation round-trips") {
  for (const char* name : {"@D1", "@D2-literal", "@cut-disc:1.3", "@sector:1.25,0.7", "@annulus:1.5,0.3,1.1"}) {
    const Domain d = builtin_domain(name);
    const std::string once = domain_to_json(d);
    const Domain back = parse_domain(once);
    CHECK(domain_to_json(back) == once);
    CHECK(area(back) == area(d));
  }
}
