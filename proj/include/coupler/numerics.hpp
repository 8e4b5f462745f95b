#ifndef COUPLER_NUMERICS_HPP
#define COUPLER_NUMERICS_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <span>
#include <string>
#include <utility>

#include "coupler/errors.hpp"

namespace coupler {
namespace numerics {

// 7-point Gauss-Legendre nodes/weights on [-1, 1].
inline constexpr double gl7_nodes[7] = {
    -0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
    0.0,
    0.4058451513773972, 0.7415311855993945, 0.9491079123427585};
inline constexpr double gl7_weights[7] = {
    0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
    0.4179591836734694,
    0.3818300505051189, 0.2797053914892766, 0.1294849661688697};

template <typename F>
double gauss7(const F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < 7; ++i) sum += gl7_weights[i] * f(mid + half * gl7_nodes[i]);
  return half * sum;
}

namespace detail {
template <typename F>
double adapt(const F& f, double a, double b, double whole, double tol, int depth,
             int max_depth, double* worst) {
  const double mid = 0.5 * (a + b);
  const double left = gauss7(f, a, mid);
  const double right = gauss7(f, mid, b);
  const double err = std::abs(left + right - whole);
  if (err <= tol || depth >= max_depth) {
    if (depth >= max_depth && err > tol && err > *worst) *worst = err;
    return left + right;
  }
  return adapt(f, a, mid, left, 0.5 * tol, depth + 1, max_depth, worst) +
         adapt(f, mid, b, right, 0.5 * tol, depth + 1, max_depth, worst);
}
}  // namespace detail

// Adaptive Gauss-Legendre integration of a smooth integrand.
// Subdivision stops when the bisected estimate changes by less than the
// (progressively halved) tolerance; throws NumericalError when max_depth
// is insufficient, reporting the achieved error.
template <typename F>
double integrate_adaptive(const F& f, double a, double b, double rel_tol = 1e-9,
                          int max_depth = 30) {
  if (a == b) return 0.0;
  const double rough = gauss7(f, a, b);
  const double scale = std::max(std::abs(rough), 1e-300);
  double worst = 0.0;
  const double result =
      detail::adapt(f, a, b, rough, rel_tol * scale, 0, max_depth, &worst);
  if (worst > 0.0) {
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "adaptive quadrature did not converge: residual interval "
                  "error %.3e exceeds tolerance %.3e",
                  worst, rel_tol * scale);
    throw NumericalError(msg);
  }
  return result;
}

// Golden-section search for the minimum of a unimodal function on [a, b].
// Returns {argmin, f(argmin)}.
template <typename F>
std::pair<double, double> golden_min(const F& f, double a, double b, double x_tol,
                                     int max_iter = 200) {
  static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;  // 0.618...
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iter && (b - a) > x_tol; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

template <typename F>
std::pair<double, double> golden_max(const F& f, double a, double b, double x_tol,
                                     int max_iter = 200) {
  auto neg = [&f](double x) { return -f(x); };
  auto [x, v] = golden_min(neg, a, b, x_tol, max_iter);
  return {x, -v};
}

// Bisection root finding; requires a sign change on [a, b].
template <typename F>
double bisect_root(const F& f, double a, double b, double x_tol,
                   int max_iter = 200) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw NumericalError("bisection: no sign change on the given bracket");
  for (int i = 0; i < max_iter && (b - a) > x_tol; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
  }
  return 0.5 * (a + b);
}

// Composite trapezoid over uniformly sampled values.
inline double trapezoid(std::span<const double> y, double dx) {
  if (y.size() < 2) return 0.0;
  double sum = 0.5 * (y.front() + y.back());
  for (std::size_t i = 1; i + 1 < y.size(); ++i) sum += y[i];
  return sum * dx;
}

inline std::complex<double> trapezoid(std::span<const std::complex<double>> y,
                                      double dx) {
  if (y.size() < 2) return {0.0, 0.0};
  std::complex<double> sum = 0.5 * (y.front() + y.back());
  for (std::size_t i = 1; i + 1 < y.size(); ++i) sum += y[i];
  return sum * dx;
}

// Composite Simpson rule over n uniform intervals (n must be even).
template <typename F>
double simpson(const F& f, double a, double b, int n) {
  if (n % 2 != 0) ++n;
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace numerics
}  // namespace coupler

#endif  // COUPLER_NUMERICS_HPP
