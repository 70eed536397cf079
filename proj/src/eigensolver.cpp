#include "wedgebound/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "wedgebound/errors.hpp"
#include "wedgebound/special.hpp"

namespace wedgebound {
namespace {

constexpr double kPi = std::numbers::pi;

struct ElementMatrices {
  double k[3][3];
  double m[3][3];
};

ElementMatrices element(const SlitMesh& mesh, const Triangle& t) {
  const Point p[3] = {mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]};
  const double area = cross(p[1] - p[0], p[2] - p[0]) / 2;
  if (!(area > 0)) throw MeshError("element with non-positive area");
  double b[3], c[3];
  for (int i = 0; i < 3; ++i) {
    const Point pj = p[(i + 1) % 3];
    const Point pk = p[(i + 2) % 3];
    b[i] = pj.y - pk.y;
    c[i] = pk.x - pj.x;
  }
  ElementMatrices e;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      e.k[i][j] = (b[i] * b[j] + c[i] * c[j]) / (4 * area);
      e.m[i][j] = area / 12 * (i == j ? 2 : 1);
    }
  }
  return e;
}

// Jacobi-preconditioned conjugate gradients; x holds the initial guess.
int conjugate_gradient(const kernels::CsrMatrix& a, const std::vector<double>& inv_diag,
                       const std::vector<double>& b, std::vector<double>& x, double tol,
                       kernels::Execution ex) {
  const std::size_t n = b.size();
  std::vector<double> r(n), z(n), p(n), ap(n);
  kernels::spmv(ex, a, x, ap);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ap[i];
  const double b_norm = std::sqrt(kernels::dot(ex, b, b));
  if (b_norm == 0) {
    std::fill(x.begin(), x.end(), 0.0);
    return 0;
  }
  for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = kernels::dot(ex, r, z);
  const int max_iter = static_cast<int>(std::max<std::size_t>(10 * n, 1000));
  for (int it = 0; it < max_iter; ++it) {
    if (std::sqrt(kernels::dot(ex, r, r)) <= tol * b_norm) return it;
    kernels::spmv(ex, a, p, ap);
    const double alpha = rz / kernels::dot(ex, p, ap);
    kernels::axpy(ex, alpha, p, x);
    kernels::axpy(ex, -alpha, ap, r);
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const double rz_next = kernels::dot(ex, r, z);
    kernels::xpby(ex, z, rz_next / rz, p);
    rz = rz_next;
  }
  throw NumericalError("conjugate gradients did not reach the requested residual");
}

struct Eigenpair {
  double lambda;
  std::vector<double> u;  // free nodes
  int outer = 0;
  int cg = 0;
};

Eigenpair inverse_iteration(const FemSystem& sys, std::vector<double> u, const FemOptions& opt) {
  const auto ex = opt.execution;
  const std::size_t n = u.size();
  std::vector<double> inv_diag = sys.stiffness.diagonal();
  for (double& d : inv_diag) d = 1.0 / d;
  std::vector<double> ku(n), mu(n), x(n);

  const auto rayleigh = [&](const std::vector<double>& v) {
    kernels::spmv(ex, sys.stiffness, v, ku);
    kernels::spmv(ex, sys.mass, v, mu);
    return kernels::dot(ex, v, ku) / kernels::dot(ex, v, mu);
  };
  const auto normalize = [&](std::vector<double>& v) {
    kernels::spmv(ex, sys.mass, v, mu);
    const double s = 1.0 / std::sqrt(kernels::dot(ex, v, mu));
    for (double& e : v) e *= s;
  };

  Eigenpair out;
  normalize(u);
  double lambda = rayleigh(u);
  double change = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= opt.max_outer_iterations; ++k) {
    kernels::spmv(ex, sys.mass, u, mu);
    for (std::size_t i = 0; i < n; ++i) x[i] = u[i] / lambda;
    out.cg += conjugate_gradient(sys.stiffness, inv_diag, mu, x, opt.cg_tolerance, ex);
    const double next = rayleigh(x);
    u = x;
    normalize(u);
    change = std::fabs(next - lambda);
    lambda = next;
    out.outer = k;
    if (k >= 3 && change <= 1e-12 * lambda) {
      out.lambda = lambda;
      out.u = std::move(u);
      return out;
    }
  }
  std::ostringstream msg;
  msg << "inverse iteration did not converge in " << opt.max_outer_iterations
      << " steps (last estimate " << lambda << ", last change " << change << ")";
  throw NumericalError(msg.str());
}

std::vector<double> expand(const FemSystem& sys, const std::vector<double>& free, std::size_t nodes) {
  std::vector<double> full(nodes, 0.0);
  for (std::size_t i = 0; i < sys.free_nodes.size(); ++i) full[sys.free_nodes[i]] = free[i];
  return full;
}

}  // namespace

FemSystem assemble(const SlitMesh& mesh) {
  FemSystem sys;
  const std::vector<char> fixed = mesh.dirichlet_mask();
  sys.free_index.assign(mesh.nodes.size(), -1);
  for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
    if (!fixed[i]) {
      sys.free_index[i] = static_cast<int>(sys.free_nodes.size());
      sys.free_nodes.push_back(static_cast<int>(i));
    }
  }
  const int n = static_cast<int>(sys.free_nodes.size());
  if (n == 0) throw MeshError("mesh has no interior nodes; refine further");
  std::vector<kernels::Triplet> kt, mt;
  kt.reserve(9 * mesh.elements.size());
  mt.reserve(9 * mesh.elements.size());
  for (const Triangle& t : mesh.elements) {
    const ElementMatrices e = element(mesh, t);
    for (int i = 0; i < 3; ++i) {
      const int r = sys.free_index[t[i]];
      if (r < 0) continue;
      for (int j = 0; j < 3; ++j) {
        const int c = sys.free_index[t[j]];
        if (c < 0) continue;
        kt.push_back({r, c, e.k[i][j]});
        mt.push_back({r, c, e.m[i][j]});
      }
    }
  }
  sys.stiffness = kernels::from_triplets(n, std::move(kt));
  sys.mass = kernels::from_triplets(n, std::move(mt));
  return sys;
}

double rayleigh_quotient(const SlitMesh& mesh, const std::vector<double>& values) {
  if (values.size() != mesh.nodes.size()) throw DomainError("one value per mesh node required");
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::fabs(v));
  if (peak == 0) throw DomainError("Rayleigh quotient of the zero function");
  for (int i : mesh.dirichlet_nodes) {
    if (std::fabs(values[i]) > 1e-14 * peak) throw DomainError("values must vanish on Dirichlet nodes");
  }
  double energy = 0.0, mass = 0.0;
  for (const Triangle& t : mesh.elements) {
    const ElementMatrices e = element(mesh, t);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        energy += values[t[i]] * e.k[i][j] * values[t[j]];
        mass += values[t[i]] * e.m[i][j] * values[t[j]];
      }
    }
  }
  return energy / mass;
}

EigenEstimate lambda1_fem(const Domain& domain, double h0, const FemOptions& options) {
  if (options.levels < 3) throw DomainError("at least three refinement levels are required");
  EigenEstimate est;
  SlitMesh mesh = build_slit_mesh(domain, h0);
  std::vector<double> guess(mesh.nodes.size(), 1.0);
  for (int level = 0; level < options.levels; ++level) {
    if (level > 0) {
      SlitMesh fine = refine(mesh);
      std::vector<double> up(fine.nodes.size());
      for (std::size_t i = 0; i < fine.nodes.size(); ++i) {
        const auto [a, b] = fine.parents[i];
        up[i] = a < 0 ? guess[i] : 0.5 * (guess[a] + guess[b]);
      }
      mesh = std::move(fine);
      guess = std::move(up);
    }
    const FemSystem sys = assemble(mesh);
    std::vector<double> u(sys.free_nodes.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double g = guess[sys.free_nodes[i]];
      u[i] = g > 0 ? g : 1e-3;
    }
    const Eigenpair pair = inverse_iteration(sys, std::move(u), options);
    guess = expand(sys, pair.u, mesh.nodes.size());
    double total = 0;
    for (double g : guess) total += g;
    if (total < 0) {
      for (double& g : guess) g = -g;
    }
    est.levels.push_back({mesh.h, pair.lambda, static_cast<int>(mesh.nodes.size()),
                          static_cast<int>(mesh.elements.size()), pair.outer, pair.cg});
  }

  const std::size_t m = est.levels.size();
  const double l0 = est.levels[m - 3].lambda;
  const double l1 = est.levels[m - 2].lambda;
  const double l2 = est.levels[m - 1].lambda;
  const double d1 = l0 - l1;
  const double d2 = l1 - l2;
  if (d1 != 0 && d2 != 0 && (d1 > 0) == (d2 > 0)) {
    est.observed_order = std::log2(d1 / d2);
    const double p = std::clamp(est.observed_order, 0.5, 4.0);
    est.extrapolated = l2 - d2 / (std::pow(2.0, p) - 1);
    est.error_estimate = std::fabs(l2 - est.extrapolated);
  } else {
    est.observed_order = std::numeric_limits<double>::quiet_NaN();
    est.extrapolated = l2;
    est.error_estimate = std::max(std::fabs(d1), std::fabs(d2));
  }
  est.eigenvector = std::move(guess);
  est.upper_bound = rayleigh_quotient(mesh, est.eigenvector);
  if (mesh.curved) {
    est.geometry_note = "curved boundary meshed as an inscribed polygon; values are for that polygon";
  }
  est.mesh = std::move(mesh);
  return est;
}

double lambda1_closed(const Domain& domain) {
  const auto sq = [](double v) { return v * v; };
  if (const auto* d = std::get_if<Disc>(&domain.shape())) {
    if (domain.slits().empty()) return sq(special::first_bessel_zero(0).k / d->radius);
    const double tol = 1e-12 * d->radius;
    if (domain.slits().size() == 1 && domain.slits()[0].size() == 2) {
      const Chain& c = domain.slits()[0];
      for (int k = 0; k < 2; ++k) {
        const Point tip = c[k] - d->center;
        const Point rim = c[1 - k] - d->center;
        if (norm(tip) <= tol && std::fabs(norm(rim) - d->radius) <= tol) return sq(kPi / d->radius);
      }
    }
    throw DomainError("no closed form for a disc with these slits");
  }
  if (!domain.slits().empty()) throw DomainError("no closed form for slit domains of this shape");
  if (const auto* s = std::get_if<CircularSector>(&domain.shape())) {
    return sq(special::first_bessel_zero(kPi / s->aperture).k / s->radius);
  }
  if (const auto* s = std::get_if<AnnularSector>(&domain.shape())) {
    return sq(special::cross_product_root(kPi / s->aperture, s->rho1, s->rho2).k);
  }
  throw DomainError("no closed form for polygons");
}

}  // namespace wedgebound
