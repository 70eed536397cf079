#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "wedgebound/commands.hpp"
#include "wedgebound/errors.hpp"

using namespace wedgebound;
using std::numbers::pi;

TEST_CASE("number rendering") {
  CHECK(six_digits(pi) == "3.14159");
  CHECK(six_digits(1e-12) == "1e-12");
  CHECK(full_precision(0.1) == "0.10000000000000001");
  CHECK(std::stod(full_precision(pi)) == pi);
  CHECK(six_digits(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("csv quoting and json values") {
  Table t{{"a", "b", "c"}, {{Cell::str("x,y"), Cell::num(1.5), Cell::empty()},
                            {Cell::str("say \"hi\""), Cell::full(0.1), Cell::num(INFINITY)}}};
  std::ostringstream csv;
  write_csv(csv, t);
  CHECK(csv.str() == "a,b,c\n\"x,y\",1.5,\n\"say \"\"hi\"\"\",0.10000000000000001,inf\n");

  std::ostringstream js;
  write_json(js, t);
  const auto doc = nlohmann::json::parse(js.str());
  REQUIRE(doc.size() == 2);
  CHECK(doc[0]["a"] == "x,y");
  CHECK(doc[0]["c"].is_null());
  CHECK(doc[1]["b"].get<double>() == 0.1);
  CHECK(doc[1]["c"] == "inf");
}

TEST_CASE("bracket verdict margins") {
  CHECK(bracket_verdict(9.0, 0.0, 10.0, 0.1) == Verdict::Ok);
  CHECK(bracket_verdict(10.05, 0.0, 10.0, 0.1) == Verdict::Ok);
  CHECK(bracket_verdict(10.05, 0.0, 10.0, 0.01) == Verdict::Violated);
  CHECK(bracket_verdict(10.05, 0.05, 10.0, 0.01) == Verdict::Ok);
  CHECK(bracket_verdict(pi * pi * (1 + 1e-12), 0, pi * pi, 0) == Verdict::Ok);
}

TEST_CASE("bound command: refusal, force and missing parameter") {
  const NamedDomain d0{"@D0", builtin_domain("@D0")};
  BoundRequest req;
  req.formula = BoundFormula::Reflex;
  CHECK_THROWS_AS(run_bound(d0, req), DomainError);

  req.param = 1.0;
  CHECK_THROWS_AS(run_bound(d0, req), ContainmentError);
  req.force = true;
  const ReportRow forced = run_bound(d0, req);
  CHECK(forced.verdict == Verdict::Forced);
  CHECK(forced.bound);
  CHECK(forced.note.find("not a bound") != std::string::npos);

  const NamedDomain d1{"@D1", builtin_domain("@D1")};
  req.force = false;
  const ReportRow ok = run_bound(d1, req);
  const double i1 = 2.0 / 3.0 * (std::sqrt(2.0) + std::log(1 + std::sqrt(2.0)));
  REQUIRE(ok.moment);
  CHECK(*ok.moment == doctest::Approx(i1).epsilon(1e-10));
  CHECK(ok.verdict == Verdict::Unverified);
}

TEST_CASE("csv output is stable under row order") {
  ReportRow a, b;
  a.domain = "x";
  a.formula = "reflex";
  a.param = 1.5;
  b.domain = "x";
  b.formula = "fk";
  std::ostringstream s1, s2;
  write_csv(s1, rows_table({a, b}));
  write_csv(s2, rows_table({b, a}));
  CHECK(s1.str() == s2.str());
}

TEST_CASE("sweep peaks where the wedge matches a sector") {
  // A sector of aperture 2 pi / beta0 is an R_beta0 domain, where the bound
  // is attained; for beta > beta0 containment fails.
  const Domain sector = builtin_domain("@sector:1.5,1");
  const auto rows = run_sweep(sector, sector.pose(), 1.0, 2.0, 11);
  REQUIRE(rows.size() == 11);
  int best = -1;
  for (int i = 0; i < 11; ++i) {
    if (rows[i].best) best = i;
    CHECK((rows[i].status == "feasible") == (i <= 5));
  }
  CHECK(best == 5);
  CHECK(*rows[5].bound == doctest::Approx(12.1871394681).epsilon(1e-9));
  CHECK_THROWS_AS(run_sweep(sector, sector.pose(), 2.0, 1.0, 3), DomainError);
  CHECK_THROWS_AS(run_sweep(sector, sector.pose(), 0.5, 1.0, 3), DomainError);
  CHECK_THROWS_AS(run_sweep(sector, sector.pose(), 1.0, 2.0, 0), DomainError);
}

TEST_CASE("audit is deterministic and flags what it should") {
  AuditOptions opts;
  opts.mc_samples = 200'000;
  const auto rows = examples_audit(opts);
  std::map<std::string, AuditRow> by_key;
  for (const auto& r : rows) by_key[r.key] = r;

  CHECK(by_key.at("cut-disc-bound").flag == "agree");
  CHECK(by_key.at("D1-reflex-literal").flag == "agree");
  CHECK(by_key.at("D1-reflex-moment").flag == "disagree");
  CHECK(by_key.at("D1-moment-methods").flag == "agree");
  CHECK(by_key.at("annular-printed-equation").flag == "disagree");
  CHECK(by_key.at("annular-cross-product").flag == "agree");
  for (const auto& r : rows) {
    if (r.key.ends_with("-vs-fem")) CHECK_MESSAGE(r.flag == "ok", r.key);
  }

  std::ostringstream a, b;
  write_csv(a, audit_table(rows));
  write_csv(b, audit_table(examples_audit(opts)));
  CHECK(a.str() == b.str());
}
