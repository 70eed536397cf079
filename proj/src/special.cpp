#include "wedgebound/special.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "wedgebound/errors.hpp"

namespace wedgebound::special {
namespace {

using ld = long double;
constexpr ld kPiL = 3.141592653589793238462643383279502884L;
constexpr ld kEulerGammaL = 0.577215664901532860606512090082402431L;

void check_order(double nu) {
  if (!(nu >= 0.0 && nu <= kMaxOrder)) {
    throw DomainError("Bessel order " + std::to_string(nu) + " outside [0, 12]");
  }
}

bool is_integer_order(double nu) { return nu == std::round(nu); }

// Power series for J_nu with nu possibly negative (non-integer), in extended
// precision. Summation stops once terms fall below the rounding level of the
// largest term, but never before 40 terms.
ld j_series(ld nu, ld x) {
  const ld half = x / 2;
  const ld q = -half * half;
  ld term = std::pow(half, nu) / std::tgamma(nu + 1);
  ld sum = term;
  ld largest = std::fabs(term);
  for (int k = 1; k < 400; ++k) {
    term *= q / (static_cast<ld>(k) * (k + nu));
    sum += term;
    largest = std::max(largest, std::fabs(term));
    if (k >= 40 && std::fabs(term) <= 1e-21L * largest) break;
  }
  return sum;
}

struct Hankel {
  ld p = 0;
  ld q = 0;
};

// Asymptotic P(nu, x), Q(nu, x) of the Hankel expansion; truncated at the
// smallest term.
Hankel hankel_pq(ld nu, ld x) {
  const ld mu = 4 * nu * nu;
  Hankel out;
  ld term = 1;
  ld previous = std::numeric_limits<ld>::max();
  out.p = 1;
  for (int k = 1; k < 200; ++k) {
    const ld odd = 2 * k - 1;
    term *= (mu - odd * odd) / (static_cast<ld>(k) * 8 * x);
    const ld mag = std::fabs(term);
    if (term == 0 || mag < 1e-22L) break;
    if (odd * odd > mu && mag > previous) break;
    previous = mag;
    const int sign = ((k / 2) % 2 == 0) ? 1 : -1;
    if (k % 2 == 0) {
      out.p += sign * term;
    } else {
      out.q += sign * term;
    }
  }
  return out;
}

struct JY {
  ld j = 0;
  ld y = 0;
};

JY hankel_jy(ld nu, ld x) {
  const Hankel pq = hankel_pq(nu, x);
  const ld chi = x - (nu / 2 + 0.25L) * kPiL;
  const ld amp = std::sqrt(2 / (kPiL * x));
  return {amp * (pq.p * std::cos(chi) - pq.q * std::sin(chi)),
          amp * (pq.p * std::sin(chi) + pq.q * std::cos(chi))};
}

// Y_n for integer n from the logarithmic limit series.
ld y_integer_series(int n, ld x) {
  const ld half = x / 2;
  const ld h2 = half * half;
  ld finite = 0;
  if (n > 0) {
    // sum_{k<n} (n-k-1)!/k! (x^2/4)^k
    ld term = std::tgamma(static_cast<ld>(n));  // k = 0: (n-1)!
    finite = term;
    for (int k = 1; k < n; ++k) {
      term *= h2 / (static_cast<ld>(k) * (n - k));
      finite += term;
    }
    finite *= -std::pow(half, static_cast<ld>(-n)) / kPiL;
  }
  const ld log_part = 2 / kPiL * std::log(half) * j_series(n, x);

  // psi(k+1) + psi(n+k+1) with psi(m+1) = -gamma + H_m
  ld harmonic_k = 0;
  ld harmonic_nk = 0;
  for (int m = 1; m <= n; ++m) harmonic_nk += 1.0L / m;
  ld term = 1 / std::tgamma(static_cast<ld>(n + 1));
  ld sum = term * (harmonic_k + harmonic_nk - 2 * kEulerGammaL);
  ld largest = std::fabs(sum);
  for (int k = 1; k < 400; ++k) {
    term *= -h2 / (static_cast<ld>(k) * (n + k));
    harmonic_k += 1.0L / k;
    harmonic_nk += 1.0L / (n + k);
    const ld contribution = term * (harmonic_k + harmonic_nk - 2 * kEulerGammaL);
    sum += contribution;
    largest = std::max(largest, std::fabs(contribution));
    if (k >= 40 && std::fabs(contribution) <= 1e-21L * largest) break;
  }
  const ld tail = -std::pow(half, static_cast<ld>(n)) / kPiL * sum;
  return finite + log_part + tail;
}

// Gauss-Legendre nodes/weights on [-1, 1].
struct GaussRule {
  std::vector<ld> x;
  std::vector<ld> w;
};

GaussRule gauss_legendre(int n) {
  GaussRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    ld z = std::cos(kPiL * (i + 0.75L) / (n + 0.5L));
    ld dp = 0;
    for (int it = 0; it < 100; ++it) {
      ld p0 = 1;
      ld p1 = z;
      for (int k = 2; k <= n; ++k) {
        const ld p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1);
      const ld dz = p1 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-19L) break;
    }
    rule.x[i] = -z;
    rule.x[n - 1 - i] = z;
    rule.w[i] = rule.w[n - 1 - i] = 2 / ((1 - z * z) * dp * dp);
  }
  return rule;
}

ld composite_gauss(const std::function<ld(ld)>& f, ld a, ld b, int panels) {
  static const GaussRule rule = gauss_legendre(24);
  const ld width = (b - a) / panels;
  ld total = 0;
  for (int p = 0; p < panels; ++p) {
    const ld lo = a + p * width;
    const ld mid = lo + width / 2;
    ld acc = 0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      acc += rule.w[i] * f(mid + width / 2 * rule.x[i]);
    }
    total += acc * width / 2;
  }
  return total;
}

// Y_nu from the Schlaefli integral representation; used for orders within
// 1e-3 of an integer where the reflection formula loses digits.
ld y_integral(ld nu, ld x) {
  const ld first = composite_gauss(
      [&](ld t) { return std::sin(x * std::sin(t) - nu * t); }, 0, kPiL, 16);
  const ld cos_nu_pi = std::cos(nu * kPiL);
  // Truncate where the integrand drops below e^-60 of its peak region.
  ld upper = 1;
  while (nu * upper - x * std::sinh(upper) > -60 || upper < 2) upper += 0.5L;
  const ld second = composite_gauss(
      [&](ld t) {
        const ld decay = -x * std::sinh(t);
        return std::exp(nu * t + decay) + std::exp(-nu * t + decay) * cos_nu_pi;
      },
      0, upper, 64);
  return (first - second) / kPiL;
}

double j_impl(double nu, double x) {
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (x > kSeriesSwitchover) return static_cast<double>(hankel_jy(nu, x).j);
  return static_cast<double>(j_series(nu, x));
}

}  // namespace

double gamma(double x) {
  if (!(x > 0.0)) throw DomainError("gamma requires x > 0, got " + std::to_string(x));
  return static_cast<double>(std::tgamma(static_cast<ld>(x)));
}

double bessel_j(double nu, double x) {
  check_order(nu);
  if (!(x >= 0.0 && x <= kMaxArgument)) {
    throw DomainError("bessel_j argument " + std::to_string(x) + " outside [0, 100]");
  }
  return j_impl(nu, x);
}

double bessel_y(double nu, double x) {
  check_order(nu);
  if (!(x > 0.0 && x <= kMaxArgument)) {
    throw DomainError("bessel_y argument " + std::to_string(x) + " outside (0, 100]");
  }
  if (x > kSeriesSwitchover) return static_cast<double>(hankel_jy(nu, x).y);
  if (is_integer_order(nu)) return static_cast<double>(y_integer_series(static_cast<int>(nu), x));
  const ld distance = std::fabs(nu - std::round(nu));
  if (distance < 1e-3L) return static_cast<double>(y_integral(nu, x));
  const ld nul = nu;
  const ld angle = nul * kPiL;
  return static_cast<double>((j_series(nul, x) * std::cos(angle) - j_series(-nul, x)) /
                             std::sin(angle));
}

namespace {

// Bisection on a bracket [lo, hi] with f(lo), f(hi) of opposite sign.
ZeroResult bisect(const std::function<double(double)>& f, double lo, double hi, double nu) {
  double flo = f(lo);
  int iterations = 0;
  while (hi - lo > 4 * std::numeric_limits<double>::epsilon() * hi && iterations < 200) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fmid = f(mid);
    ++iterations;
    if (fmid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((fmid > 0) == (flo > 0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  const double k = 0.5 * (lo + hi);
  return {nu, k, f(k), iterations};
}

// Leading terms of the uniform asymptotic expansion of j_{nu,1} for large nu
// and McMahon's expansion for small nu; used only to position the scan.
double first_zero_estimate(double nu) {
  if (nu >= 1.0) {
    const double c = std::cbrt(nu);
    return nu + 1.8557571 * c + 1.033150 / c - 0.00397 / nu;
  }
  const double b = (0.75 + 0.5 * nu) * std::numbers::pi;
  const double mu = 4 * nu * nu;
  return b - (mu - 1) / (8 * b);
}

constexpr double kScanStep = 0.1;

}  // namespace

ZeroResult first_bessel_zero(double nu) {
  check_order(nu);
  const auto f = [nu](double x) { return j_impl(nu, x); };
  // J_nu > 0 on (0, sqrt(nu (nu + 2))], so the scan cannot skip the first zero.
  const double safe = std::max(std::sqrt(nu * (nu + 2)), kScanStep);
  double start = std::max(safe, first_zero_estimate(nu) - 1.5);
  if (!(f(start) > 0)) start = safe;
  double lo = start;
  double flo = f(lo);
  for (double hi = lo + kScanStep; hi <= 60.0; hi += kScanStep) {
    const double fhi = f(hi);
    if ((fhi > 0) != (flo > 0) || fhi == 0.0) {
      ZeroResult result = bisect(f, lo, hi, nu);
      if (std::fabs(result.residual) > 1e-12) {
        throw NumericalError("first_bessel_zero residual " + std::to_string(result.residual));
      }
      return result;
    }
    lo = hi;
    flo = fhi;
  }
  throw NumericalError("first_bessel_zero: no sign change in [0, 60] for nu = " +
                       std::to_string(nu));
}

namespace {

void check_radii(double rho1, double rho2) {
  if (!(rho1 > 0.0 && rho1 < rho2)) {
    throw DomainError("annular root requires 0 < rho1 < rho2");
  }
}

// J^2 + Y^2 never vanishes for x > 0; used to make the annular residuals
// scale free without dividing by quantities that can be zero.
double modulus_squared(double nu, double x) {
  const double j = j_impl(nu, x);
  const double y = bessel_y(nu, x);
  return j * j + y * y;
}

}  // namespace

ZeroResult cross_product_root(double nu, double rho1, double rho2) {
  check_order(nu);
  check_radii(rho1, rho2);
  const auto f = [=](double k) {
    const double a = j_impl(nu, k * rho1) * bessel_y(nu, k * rho2);
    const double b = j_impl(nu, k * rho2) * bessel_y(nu, k * rho1);
    return (a - b) / std::sqrt(modulus_squared(nu, k * rho1) * modulus_squared(nu, k * rho2));
  };
  // The annular sector lies inside the full sector of radius rho2, so its
  // fundamental k exceeds j_{nu,1} / rho2.
  const double k_min = first_bessel_zero(nu).k / rho2;
  const double step = kScanStep / rho2;
  double lo = k_min * (1 - 1e-12);
  double flo = f(lo);
  for (double hi = lo + step; hi * rho2 <= kMaxArgument; hi += step) {
    const double fhi = f(hi);
    if ((fhi > 0) != (flo > 0) || fhi == 0.0) {
      ZeroResult result = bisect(f, lo, hi, nu);
      if (std::fabs(result.residual) > 1e-10) {
        throw NumericalError("cross_product_root residual " + std::to_string(result.residual));
      }
      return result;
    }
    lo = hi;
    flo = fhi;
  }
  throw NumericalError("cross_product_root: no sign change found");
}

std::optional<ZeroResult> equal_radius_annular_root(double nu, double rho1, double rho2) {
  check_order(nu);
  check_radii(rho1, rho2);
  const auto f = [=](double k) {
    const double a = j_impl(nu, k * rho1) * bessel_y(nu, k * rho1);
    const double b = j_impl(nu, k * rho2) * bessel_y(nu, k * rho2);
    return 2 * (a - b) / (modulus_squared(nu, k * rho1) + modulus_squared(nu, k * rho2));
  };
  // Both products tend to -1/(pi nu) as k -> 0, so k = 0 is a trivial root;
  // the scan starts one step away from it.
  const double step = kScanStep / rho2;
  double lo = step;
  double flo = f(lo);
  for (double hi = lo + step; hi * rho2 <= kMaxArgument; hi += step) {
    const double fhi = f(hi);
    if ((fhi > 0) != (flo > 0) || fhi == 0.0) return bisect(f, lo, hi, nu);
    lo = hi;
    flo = fhi;
  }
  return std::nullopt;
}

}  // namespace wedgebound::special
