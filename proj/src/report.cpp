#include "wedgebound/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <tuple>

#include "json.hpp"

namespace wedgebound {
namespace {

std::string render(const Cell& c) {
  switch (c.kind) {
    case Cell::Kind::Empty:
      return "";
    case Cell::Kind::Text:
      return c.text;
    case Cell::Kind::Number:
      return six_digits(c.number);
    case Cell::Kind::Full:
      return full_precision(c.number);
  }
  return "";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string six_digits(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string full_precision(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << csv_field(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(render(row[i]));
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& table) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
      const Cell& c = row[i];
      switch (c.kind) {
        case Cell::Kind::Empty:
          obj[table.columns[i]] = nullptr;
          break;
        case Cell::Kind::Text:
          obj[table.columns[i]] = c.text;
          break;
        default:
          if (std::isfinite(c.number)) {
            obj[table.columns[i]] = c.number;
          } else {
            obj[table.columns[i]] = render(c);
          }
      }
    }
    doc.push_back(std::move(obj));
  }
  out << doc.dump(2) << '\n';
}

double bound_uncertainty(const BoundReport& report) {
  if (!report.moment || report.moment->value <= 0) return 0.0;
  const double exponent = report.formula == BoundFormula::Reflex ? 2 / (report.param + 2)
                          : report.formula == BoundFormula::PayneWeinberger ? 1 / (report.param + 1)
                                                                            : 0.0;
  return report.value * exponent * report.moment->abs_err / report.moment->value;
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Ok:
      return "ok";
    case Verdict::Violated:
      return "violated";
    case Verdict::Refused:
      return "refused";
    case Verdict::Forced:
      return "forced";
    case Verdict::Unverified:
      return "unverified";
  }
  return "unverified";
}

Verdict bracket_verdict(double bound, double bound_err, double lambda, double lambda_err) {
  // A relative floor covers rounding when the bound is attained exactly.
  const double margin = std::fabs(bound_err) + std::fabs(lambda_err) + 1e-9 * std::fabs(lambda);
  return bound - lambda > margin ? Verdict::Violated : Verdict::Ok;
}

ReportRow make_row(const std::string& domain, const BoundReport& report, const EigenEstimate* fem) {
  ReportRow row;
  row.domain = domain;
  row.formula = to_string(report.formula);
  if (report.formula != BoundFormula::FaberKrahn) row.param = report.param;
  row.pose = report.pose_used;
  if (report.moment) {
    row.moment = report.moment->value;
    row.moment_err = report.moment->abs_err;
    row.moment_method = to_string(report.moment->method);
  }
  if (fem) {
    row.lambda = fem->extrapolated;
    row.lambda_err = fem->error_estimate;
    row.upper_bound = fem->upper_bound;
    if (!fem->geometry_note.empty()) row.note = fem->geometry_note;
  }
  if (!report.containment_ok && !report.forced) {
    row.verdict = Verdict::Refused;
    row.note = report.containment_reason;
    return row;
  }
  row.bound = report.value;
  row.bound_err = bound_uncertainty(report);
  if (report.forced) {
    row.verdict = Verdict::Forced;
    row.note = "containment failed, value is not a bound: " + report.containment_reason;
  } else if (fem) {
    row.verdict = bracket_verdict(report.value, *row.bound_err, fem->extrapolated, fem->error_estimate);
  }
  return row;
}

Table rows_table(std::vector<ReportRow> rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    return std::tie(a.domain, a.formula, a.param) < std::tie(b.domain, b.formula, b.param);
  });
  Table t;
  t.columns = {"domain",     "formula",     "param",      "origin_x",     "origin_y",
               "rotation",   "bound",       "bound_full", "bound_err",    "moment",
               "moment_err", "moment_method", "lambda_fem", "lambda_full", "lambda_err",
               "upper_bound", "verdict",    "provenance", "note"};
  for (const ReportRow& r : rows) {
    t.rows.push_back({Cell::str(r.domain), Cell::str(r.formula), Cell::num(r.param),
                      Cell::num(r.pose.origin.x), Cell::num(r.pose.origin.y), Cell::num(r.pose.rotation),
                      Cell::num(r.bound), Cell::full(r.bound), Cell::num(r.bound_err),
                      Cell::num(r.moment), Cell::num(r.moment_err), Cell::str(r.moment_method),
                      Cell::num(r.lambda), Cell::full(r.lambda), Cell::num(r.lambda_err),
                      Cell::num(r.upper_bound), Cell::str(to_string(r.verdict)), Cell::str(r.provenance),
                      Cell::str(r.note)});
  }
  return t;
}

}  // namespace wedgebound
