#include "wedgebound/bounds.hpp"

#include <cmath>
#include <numbers>

#include "wedgebound/errors.hpp"

namespace wedgebound {
namespace {

constexpr double kPi = std::numbers::pi;

BoundReport wedge_bound(const Domain& domain, const WedgeFamily& family, const Pose& pose,
                        const BoundOptions& options) {
  const Domain frame = to_wedge_frame(domain, pose);
  const ContainmentReport report = contains_in_wedge(frame, family);
  if (!report.ok && !options.force) throw ContainmentError(report.reason);

  BoundReport out;
  out.param = family.param;
  out.area = area(domain);
  out.containment_ok = report.ok;
  out.forced = !report.ok;
  out.containment_reason = report.reason;
  out.pose_used = pose;
  out.moment = report.ok ? moment(frame, family, options.method)
                         : moment_unchecked(frame, family, options.method);
  if (!(out.moment->value > 0)) throw NumericalError("moment vanished; no bound available");
  if (family.kind == WedgeKind::PayneWeinberger) {
    out.formula = BoundFormula::PayneWeinberger;
    out.zero = special::first_bessel_zero(family.param);
    out.value = pw_value(family.param, out.moment->value);
  } else {
    out.formula = BoundFormula::Reflex;
    out.zero = special::first_bessel_zero(family.param / 2);
    out.value = reflex_value(family.param, out.moment->value);
  }
  return out;
}

}  // namespace

std::string to_string(BoundFormula formula) {
  switch (formula) {
    case BoundFormula::FaberKrahn: return "fk";
    case BoundFormula::PayneWeinberger: return "pw";
    case BoundFormula::Reflex: return "reflex";
  }
  return "unknown";
}

BoundReport faber_krahn_bound(const Domain& domain) {
  BoundReport out;
  out.formula = BoundFormula::FaberKrahn;
  out.area = area(domain);
  if (!(out.area > 0)) throw DomainError("Faber-Krahn bound needs positive area");
  out.zero = special::first_bessel_zero(0);
  out.value = kPi * out.zero.k * out.zero.k / out.area;
  out.containment_ok = true;
  out.pose_used = domain.pose();
  return out;
}

double pw_value(double alpha, double moment) {
  const double j = special::first_bessel_zero(alpha).k;
  const double log_base = std::log(4 * alpha * (alpha + 1) / kPi) + std::log(moment);
  return std::exp(-log_base / (alpha + 1) + 2 * std::log(j));
}

double reflex_value(double beta, double moment) {
  const double j = special::first_bessel_zero(beta / 2).k;
  const double log_base = std::log(beta * (beta + 2) / kPi) + std::log(moment);
  return std::exp(-2 * log_base / (beta + 2) + 2 * std::log(j));
}

BoundReport pw_bound(const Domain& domain, double alpha, const Pose& pose,
                     const BoundOptions& options) {
  return wedge_bound(domain, WedgeFamily::payne_weinberger(alpha), pose, options);
}

BoundReport reflex_bound(const Domain& domain, double beta, const Pose& pose,
                         const BoundOptions& options) {
  return wedge_bound(domain, WedgeFamily::reflex(beta), pose, options);
}

namespace {

double annular_log_base(double beta, double rho1, double rho2) {
  WedgeFamily::reflex(beta);
  if (!(rho1 > 0 && rho1 < rho2)) throw DomainError("annular bound requires 0 < rho1 < rho2");
  // log(rho2^e - rho1^e) without cancellation for rho1 close to rho2.
  const double e = beta + 2;
  return e * std::log(rho2) + std::log1p(-std::pow(rho1 / rho2, e));
}

}  // namespace

double annular_root_bound(double beta, double rho1, double rho2) {
  const double j = special::first_bessel_zero(beta / 2).k;
  return j * std::exp(-annular_log_base(beta, rho1, rho2) / (beta + 2));
}

double annular_root_bound_squared_exponent(double beta, double rho1, double rho2) {
  const double j = special::first_bessel_zero(beta / 2).k;
  return j * std::exp(-2 * annular_log_base(beta, rho1, rho2) / (beta + 2));
}

LemmaGap lemma_gap(const Domain& domain, double beta, const Pose& pose) {
  const WedgeFamily family = WedgeFamily::reflex(beta);
  const Domain frame = to_wedge_frame(domain, pose);
  const QuadratureResult area_moment = moment(frame, family);
  const QuadratureResult edge_moment = boundary_moment(frame, beta);
  const double p = (beta + 2) / (beta + 1);
  LemmaGap out;
  out.lhs = std::exp(p * std::log(beta / kPi * edge_moment.value));
  out.rhs = beta * (beta + 2) / kPi * area_moment.value;
  out.gap = out.lhs - out.rhs;
  out.tol = out.lhs * p * edge_moment.abs_err / edge_moment.value +
            out.rhs * area_moment.abs_err / area_moment.value +
            1e-12 * std::max(out.lhs, out.rhs);
  return out;
}

}  // namespace wedgebound
