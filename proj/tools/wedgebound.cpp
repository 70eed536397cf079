// wedgebound: eigenvalue lower bounds for membranes in wedges and cut planes.
//
// Exit codes: 0 success, 1 usage or parse error, 2 containment refused or no
// feasible pose, 3 numerical or meshing failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "wedgebound/commands.hpp"
#include "wedgebound/errors.hpp"

namespace {

using namespace wedgebound;

enum Exit { kOk = 0, kUsage = 1, kContainment = 2, kNumerical = 3 };

struct Common {
  std::string domain;
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 20240601;
  std::string origin;
  std::optional<double> rotation;
};

void add_common(CLI::App* cmd, Common& c, bool needs_domain) {
  auto* d = cmd->add_option("--domain", c.domain, "domain file or built-in name (@D0, @D1, ...)");
  if (needs_domain) d->required();
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", c.out, "write output to this file instead of stdout");
  cmd->add_option("--seed", c.seed, "seed for stochastic subroutines");
}

void add_pose(CLI::App* cmd, Common& c) {
  cmd->add_option("--origin", c.origin, "wedge origin as x,y");
  cmd->add_option("--rotation", c.rotation, "wedge rotation in radians");
}

std::optional<Pose> pose_of(const Common& c, const Domain& domain) {
  if (c.origin.empty() && !c.rotation) return std::nullopt;
  Point origin = domain.pose().origin;
  if (!c.origin.empty()) {
    std::istringstream in(c.origin);
    char comma = 0;
    std::string rest;
    if (!(in >> origin.x >> comma >> origin.y) || comma != ',' || (in >> rest)) {
      throw ParseError("--origin expects x,y (got '" + c.origin + "')");
    }
  }
  return Pose(origin, c.rotation.value_or(domain.pose().rotation));
}

void emit(const Common& c, const Table& table) {
  std::ofstream file;
  if (!c.out.empty()) {
    file.open(c.out, std::ios::binary);
    if (!file) throw ParseError("cannot write " + c.out);
  }
  std::ostream& out = c.out.empty() ? std::cout : file;
  if (c.format == "json") {
    write_json(out, table);
  } else {
    write_csv(out, table);
  }
}

BoundFormula formula_of(const std::string& name) {
  if (name == "fk") return BoundFormula::FaberKrahn;
  if (name == "pw") return BoundFormula::PayneWeinberger;
  return BoundFormula::Reflex;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirichlet eigenvalue lower bounds for membranes in wedges and cut planes", "wedgebound"};
  app.require_subcommand(1);

  Common common;
  std::string formula = "fk";
  std::optional<double> alpha, beta;
  bool force = false;
  double h0 = 0.1;
  int refinements = 3;
  int budget = 400;
  double beta_from = 1, beta_to = 2;
  int steps = 11;

  auto* bound = app.add_subcommand("bound", "evaluate one bound at a pose");
  add_common(bound, common, true);
  add_pose(bound, common);
  bound->add_option("--formula", formula, "fk, pw or reflex")->check(CLI::IsMember({"fk", "pw", "reflex"}));
  bound->add_option("--alpha", alpha, "Payne-Weinberger wedge parameter (>= 1)");
  bound->add_option("--beta", beta, "reflex parameter in [1, 2]");
  bound->add_flag("--force", force, "evaluate despite failed containment (result marked invalid)");

  auto* verify = app.add_subcommand("verify", "FEM eigenvalue with all three bounds");
  add_common(verify, common, true);
  add_pose(verify, common);
  verify->add_option("--h0", h0, "coarsest mesh spacing");
  verify->add_option("--refinements", refinements, "number of mesh levels (>= 3)");
  verify->add_option("--alpha", alpha, "Payne-Weinberger parameter (default 1)");
  verify->add_option("--beta", beta, "reflex parameter (default 1)");

  auto* optimize = app.add_subcommand("optimize-origin", "search the wedge pose maximizing a bound");
  add_common(optimize, common, true);
  optimize->add_option("--formula", formula, "pw or reflex")->check(CLI::IsMember({"pw", "reflex"}));
  optimize->add_option("--alpha", alpha, "Payne-Weinberger parameter");
  optimize->add_option("--beta", beta, "reflex parameter");
  optimize->add_option("--budget", budget, "bound evaluations (>= 50)");

  auto* sweep = app.add_subcommand("sweep", "reflex bound over a range of beta at a fixed pose");
  add_common(sweep, common, true);
  add_pose(sweep, common);
  sweep->add_option("--beta-from", beta_from, "first beta");
  sweep->add_option("--beta-to", beta_to, "last beta");
  sweep->add_option("--steps", steps, "number of beta values");

  auto* audit = app.add_subcommand("paper-examples", "audit table of the worked examples");
  add_common(audit, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (audit->parsed()) {
      AuditOptions options;
      options.seed = common.seed;
      emit(common, audit_table(examples_audit(options)));
      return kOk;
    }
    const NamedDomain domain = load_domain(common.domain);
    if (bound->parsed()) {
      BoundRequest req;
      req.formula = formula_of(formula);
      req.param = req.formula == BoundFormula::PayneWeinberger ? alpha
                  : req.formula == BoundFormula::Reflex        ? beta
                                                               : std::nullopt;
      req.pose = pose_of(common, domain.domain);
      req.force = force;
      emit(common, rows_table({run_bound(domain, req)}));
      return kOk;
    }
    if (verify->parsed()) {
      VerifyRequest req;
      req.h0 = h0;
      req.refinements = refinements;
      req.alpha = alpha.value_or(1.0);
      req.beta = beta.value_or(1.0);
      req.pose = pose_of(common, domain.domain);
      emit(common, rows_table(run_verify(domain, req)));
      return kOk;
    }
    if (optimize->parsed()) {
      const bool pw = formula == "pw";
      if (pw ? !alpha : !beta) throw DomainError(pw ? "optimize-origin --formula pw requires --alpha"
                                                    : "optimize-origin requires --beta");
      const WedgeFamily family = pw ? WedgeFamily::payne_weinberger(*alpha) : WedgeFamily::reflex(*beta);
      const PoseSearchResult result = optimize_pose(domain.domain, family, budget);
      emit(common, optimize_table(domain.id, family, result));
      return result.feasible() ? kOk : kContainment;
    }
    if (sweep->parsed()) {
      const Pose pose = pose_of(common, domain.domain).value_or(domain.domain.pose());
      emit(common, sweep_table(domain.id, run_sweep(domain.domain, pose, beta_from, beta_to, steps)));
      return kOk;
    }
  } catch (const ContainmentError& e) {
    std::cerr << "wedgebound: containment refused: " << e.what() << '\n';
    return kContainment;
  } catch (const NumericalError& e) {
    std::cerr << "wedgebound: numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const MeshError& e) {
    std::cerr << "wedgebound: meshing failed: " << e.what() << '\n';
    return kNumerical;
  } catch (const ParseError& e) {
    std::cerr << "wedgebound: " << e.what() << '\n';
    return kUsage;
  } catch (const ValidationError& e) {
    std::cerr << "wedgebound: invalid domain: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "wedgebound: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
