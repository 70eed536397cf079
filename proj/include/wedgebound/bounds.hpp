#pragma once

#include <optional>
#include <string>

#include "wedgebound/geometry.hpp"
#include "wedgebound/moments.hpp"
#include "wedgebound/special.hpp"

namespace wedgebound {

enum class BoundFormula { FaberKrahn, PayneWeinberger, Reflex };

std::string to_string(BoundFormula formula);

/// A lower bound for lambda_1 together with everything that went into it.
struct BoundReport {
  BoundFormula formula = BoundFormula::FaberKrahn;
  double value = 0.0;
  /// alpha or beta; 0 for Faber-Krahn.
  double param = 0.0;
  double area = 0.0;
  std::optional<QuadratureResult> moment;
  special::ZeroResult zero;
  bool containment_ok = false;
  /// Issued despite failed containment; the value is not a bound.
  bool forced = false;
  std::string containment_reason;
  Pose pose_used;

  bool valid() const { return containment_ok && !forced; }
};

struct BoundOptions {
  QuadratureMethod method = QuadratureMethod::Auto;
  /// Evaluate the formula even when the domain leaves the wedge.
  bool force = false;
};

/// pi j_{0,1}^2 / |D|.
BoundReport faber_krahn_bound(const Domain& domain);

/// [4 alpha (alpha + 1) I_alpha / pi]^(-1/(alpha+1)) j_{alpha,1}^2 for the
/// domain placed in S_alpha by `pose`. Throws ContainmentError unless forced.
BoundReport pw_bound(const Domain& domain, double alpha, const Pose& pose,
                     const BoundOptions& options = {});

/// [beta (beta + 2) I_beta / pi]^(-2/(beta+2)) j_{beta/2,1}^2 for the domain
/// placed in R_beta by `pose`. Throws ContainmentError unless forced.
BoundReport reflex_bound(const Domain& domain, double beta, const Pose& pose,
                         const BoundOptions& options = {});

/// The formulas above as functions of the moment alone.
double pw_value(double alpha, double moment);
double reflex_value(double beta, double moment);

/// Lower bound on the radial wavenumber k of the annular sector
/// rho1 < r < rho2, |theta| < pi/beta, from the reflex bound with the sector's
/// closed-form moment: (rho2^(beta+2) - rho1^(beta+2))^(-1/(beta+2)) j_{beta/2,1}.
double annular_root_bound(double beta, double rho1, double rho2);
/// Same with the exponent -2/(beta+2), which mixes the lambda and k levels.
double annular_root_bound_squared_exponent(double beta, double rho1, double rho2);

struct LemmaGap {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  /// Quadrature uncertainty of the gap.
  double tol = 0.0;
};

/// lhs = [(beta/pi) int_{dD} r^beta cos^2(beta theta/2) ds]^((beta+2)/(beta+1)),
/// rhs = beta (beta+2) I_beta / pi. Throws ContainmentError.
LemmaGap lemma_gap(const Domain& domain, double beta, const Pose& pose);

}  // namespace wedgebound
