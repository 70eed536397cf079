#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "wedgebound/bounds.hpp"
#include "wedgebound/eigensolver.hpp"

namespace wedgebound {

/// Table cell: text, a number shown with 6 significant digits, or a number
/// shown with full (round-trip) precision. JSON output always carries the
/// full value.
struct Cell {
  enum class Kind { Empty, Text, Number, Full };
  Kind kind = Kind::Empty;
  std::string text;
  double number = 0.0;

  static Cell empty() { return {}; }
  static Cell str(std::string s) { return {Kind::Text, std::move(s), 0.0}; }
  static Cell num(double v) { return {Kind::Number, {}, v}; }
  static Cell full(double v) { return {Kind::Full, {}, v}; }
  static Cell num(const std::optional<double>& v) { return v ? num(*v) : empty(); }
  static Cell full(const std::optional<double>& v) { return v ? full(*v) : empty(); }
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// "%.6g" and "%.17g" renderings used by the writers.
std::string six_digits(double v);
std::string full_precision(double v);

/// CSV with a header row; fields containing commas or quotes are quoted.
void write_csv(std::ostream& out, const Table& table);
/// Array of objects keyed by column name.
void write_json(std::ostream& out, const Table& table);

/// Relative uncertainty of a moment-based bound: the bound is
/// C * I^(-e), so dB/B = e * dI/I.
double bound_uncertainty(const BoundReport& report);

enum class Verdict { Ok, Violated, Refused, Forced, Unverified };
std::string to_string(Verdict verdict);

/// bound <= lambda unless the excess exceeds the combined margins.
Verdict bracket_verdict(double bound, double bound_err, double lambda, double lambda_err);

/// One bound checked (or not) against an eigenvalue estimate.
struct ReportRow {
  std::string domain;
  std::string formula;
  std::optional<double> param;
  Pose pose;
  std::optional<double> bound;
  std::optional<double> bound_err;
  std::optional<double> moment;
  std::optional<double> moment_err;
  std::string moment_method;
  std::optional<double> lambda;
  std::optional<double> lambda_err;
  std::optional<double> upper_bound;
  Verdict verdict = Verdict::Unverified;
  std::string provenance = "derived";
  std::string note;
};

/// Row for a report, verdict Refused/Forced/Unverified/Ok/Violated as
/// appropriate; `fem` may be null.
ReportRow make_row(const std::string& domain, const BoundReport& report, const EigenEstimate* fem);

/// Rows sorted by (domain, formula, param) so emission order is stable.
Table rows_table(std::vector<ReportRow> rows);

}  // namespace wedgebound
