#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wedgebound/domain_io.hpp"
#include "wedgebound/origin_search.hpp"
#include "wedgebound/report.hpp"

namespace wedgebound {

// The command layer behind the CLI. Each command returns data; rendering and
// exit codes live in tools/wedgebound.cpp.

struct BoundRequest {
  BoundFormula formula = BoundFormula::FaberKrahn;
  /// alpha or beta; required for pw and reflex.
  std::optional<double> param;
  /// Overrides the domain's own pose.
  std::optional<Pose> pose;
  bool force = false;
};

/// Throws ContainmentError when containment fails and force is off, and
/// DomainError when the parameter is missing.
ReportRow run_bound(const NamedDomain& domain, const BoundRequest& request);

struct VerifyRequest {
  double h0 = 0.1;
  int refinements = 3;
  double alpha = 1.0;
  double beta = 1.0;
  std::optional<Pose> pose;
};

/// FEM estimate plus the FK, PW (alpha) and reflex (beta) bounds with their
/// bracketing verdicts. Bounds whose containment fails come back as
/// "refused" rows. FEM failures propagate (NumericalError, MeshError).
std::vector<ReportRow> run_verify(const NamedDomain& domain, const VerifyRequest& request);

/// Best pose, trace summary and, when infeasible, a single "infeasible" row.
Table optimize_table(const std::string& domain_id, const WedgeFamily& family,
                     const PoseSearchResult& result);

struct SweepRow {
  double beta = 1.0;
  std::optional<double> bound;
  std::string status;
  bool best = false;
};

/// Reflex bound at `steps` evenly spaced beta in [from, to] for a fixed pose;
/// the largest feasible value is flagged. Throws DomainError unless
/// 1 <= from <= to <= 2 and steps >= 1.
std::vector<SweepRow> run_sweep(const Domain& domain, const Pose& pose, double from, double to,
                                int steps);
Table sweep_table(const std::string& domain_id, const std::vector<SweepRow>& rows);

/// One claim of the worked examples: the printed value (if one is
/// printed), the recomputed value with its uncertainty, and a flag. Flags:
/// agree / disagree for printed-vs-recomputed rows, ok / violated for
/// bracketing rows, info for rows that only report a number.
struct AuditRow {
  std::string key;
  std::string claim;
  std::optional<double> printed;
  double recomputed = 0.0;
  double uncertainty = 0.0;
  std::string method;
  std::string flag;
  std::string note;
};

struct AuditOptions {
  std::uint64_t seed = 20240601;
  std::size_t mc_samples = 2'000'000;
  int fem_levels = 3;
};

std::vector<AuditRow> examples_audit(const AuditOptions& options = {});
Table audit_table(const std::vector<AuditRow>& rows);

}  // namespace wedgebound
