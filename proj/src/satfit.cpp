#include <gsl/gsl_blas.h>
#include <gsl/gsl_matrix.h>
#include <gsl/gsl_multifit_nlinear.h>
#include <gsl/gsl_vector.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "coupler/cw.hpp"
#include "coupler/errors.hpp"

namespace coupler {

void SaturationDataset::validate() const {
  if (power_w.size() != rate_per_s.size())
    throw DomainError("SaturationDataset: power/rate length mismatch");
  if (power_w.size() < 4)
    throw DomainError("SaturationDataset: need at least 4 points");
  double pmin = std::numeric_limits<double>::infinity();
  double pmax = 0.0;
  for (std::size_t i = 0; i < power_w.size(); ++i) {
    if (!std::isfinite(power_w[i]) || power_w[i] <= 0.0)
      throw DomainError("SaturationDataset: powers must be positive");
    if (!std::isfinite(rate_per_s[i]) || rate_per_s[i] < 0.0)
      throw DomainError("SaturationDataset: rates must be >= 0");
    pmin = std::min(pmin, power_w[i]);
    pmax = std::max(pmax, power_w[i]);
  }
  if (pmax < 10.0 * pmin)
    throw DomainError("SaturationDataset: powers must span at least one decade");
  if (!std::isfinite(gamma) || gamma <= 0.0 || !std::isfinite(omega0) || omega0 <= 0.0)
    throw DomainError("SaturationDataset: gamma and omega0 must be positive");
}

namespace {

struct FitData {
  const std::vector<double>* p;
  const std::vector<double>* y;
};

// Parameters: x = (A, ln P1, B); model A * s/(1+s) + B with s = P / P1.
int residuals_f(const gsl_vector* x, void* params, gsl_vector* f) {
  const auto* d = static_cast<const FitData*>(params);
  const double a = gsl_vector_get(x, 0);
  const double ln_p1 = gsl_vector_get(x, 1);
  const double b = gsl_vector_get(x, 2);
  for (std::size_t i = 0; i < d->p->size(); ++i) {
    const double s = (*d->p)[i] * std::exp(-ln_p1);
    gsl_vector_set(f, i, a * s / (1.0 + s) + b - (*d->y)[i]);
  }
  return GSL_SUCCESS;
}

int residuals_df(const gsl_vector* x, void* params, gsl_matrix* jac) {
  const auto* d = static_cast<const FitData*>(params);
  const double a = gsl_vector_get(x, 0);
  const double ln_p1 = gsl_vector_get(x, 1);
  for (std::size_t i = 0; i < d->p->size(); ++i) {
    const double s = (*d->p)[i] * std::exp(-ln_p1);
    const double frac = s / (1.0 + s);
    gsl_matrix_set(jac, i, 0, frac);
    gsl_matrix_set(jac, i, 1, -a * frac / (1.0 + s));
    gsl_matrix_set(jac, i, 2, 1.0);
  }
  return GSL_SUCCESS;
}

struct SingleFit {
  double a, ln_p1, b;
  double chisq;
  double err_a, err_ln_p1, err_b;
  int iterations;
  bool converged;
};

SingleFit run_single_fit(const FitData& data, double a0, double p1_0, double b0) {
  const std::size_t n = data.p->size();
  const std::size_t np = 3;

  gsl_multifit_nlinear_fdf fdf{};
  fdf.f = residuals_f;
  fdf.df = residuals_df;
  fdf.fvv = nullptr;
  fdf.n = n;
  fdf.p = np;
  fdf.params = const_cast<FitData*>(&data);

  gsl_multifit_nlinear_parameters fdf_params =
      gsl_multifit_nlinear_default_parameters();
  gsl_multifit_nlinear_workspace* w = gsl_multifit_nlinear_alloc(
      gsl_multifit_nlinear_trust, &fdf_params, n, np);

  gsl_vector* x0 = gsl_vector_alloc(np);
  gsl_vector_set(x0, 0, a0);
  gsl_vector_set(x0, 1, std::log(p1_0));
  gsl_vector_set(x0, 2, b0);
  gsl_multifit_nlinear_init(x0, &fdf, w);

  int info = 0;
  const int status = gsl_multifit_nlinear_driver(400, 1e-10, 1e-10, 1e-10,
                                                 nullptr, nullptr, &info, w);

  SingleFit out{};
  out.converged = (status == GSL_SUCCESS);
  out.iterations = static_cast<int>(gsl_multifit_nlinear_niter(w));
  out.a = gsl_vector_get(w->x, 0);
  out.ln_p1 = gsl_vector_get(w->x, 1);
  out.b = gsl_vector_get(w->x, 2);
  gsl_blas_ddot(w->f, w->f, &out.chisq);

  gsl_matrix* covar = gsl_matrix_alloc(np, np);
  gsl_multifit_nlinear_covar(gsl_multifit_nlinear_jac(w), 0.0, covar);
  const double dof = static_cast<double>(n) - static_cast<double>(np);
  const double variance = dof > 0.0 ? out.chisq / dof : 0.0;
  out.err_a = std::sqrt(std::max(0.0, gsl_matrix_get(covar, 0, 0) * variance));
  out.err_ln_p1 = std::sqrt(std::max(0.0, gsl_matrix_get(covar, 1, 1) * variance));
  out.err_b = std::sqrt(std::max(0.0, gsl_matrix_get(covar, 2, 2) * variance));
  gsl_matrix_free(covar);
  gsl_vector_free(x0);
  gsl_multifit_nlinear_free(w);
  return out;
}

}  // namespace

SaturationFitResult fit_saturation(const SaturationDataset& data, double hbar) {
  data.validate();
  gsl_set_error_handler_off();

  FitData fd{&data.power_w, &data.rate_per_s};
  const auto [pmin_it, pmax_it] =
      std::minmax_element(data.power_w.begin(), data.power_w.end());
  const double pmin = *pmin_it;
  const double pmax = *pmax_it;
  const double ymax = *std::max_element(data.rate_per_s.begin(), data.rate_per_s.end());

  const double a0 = std::max(ymax - data.background, 0.1 * std::max(ymax, 1.0));
  const double b0 = data.background;

  // Log-spaced multi-start in P1 avoids the shallow valley between the
  // amplitude and the saturation power.
  constexpr int n_starts = 5;
  SingleFit best{};
  best.chisq = std::numeric_limits<double>::infinity();
  bool any_converged = false;
  for (int k = 0; k < n_starts; ++k) {
    const double frac = static_cast<double>(k) / (n_starts - 1);
    const double p1_0 = pmin * std::pow(pmax / pmin, frac);
    const SingleFit fit = run_single_fit(fd, a0, p1_0, b0);
    if (fit.converged && std::isfinite(fit.chisq) && fit.chisq < best.chisq) {
      best = fit;
      any_converged = true;
    }
  }
  if (!any_converged)
    throw NumericalError("fit_saturation: no start converged");

  const double p1 = std::exp(best.ln_p1);
  if (p1 > 1e3 * pmax)
    throw NumericalError(
        "fit_saturation: degenerate data, all points in the linear regime "
        "(fitted saturation power far above the measured range)");
  if (p1 < 1e-3 * pmin)
    throw NumericalError(
        "fit_saturation: degenerate data, all points deeply saturated "
        "(fitted saturation power far below the measured range)");

  CouplingParams cp{0.0, data.gamma, data.delta, data.omega0};
  SaturationFitResult out;
  out.p_at_s1 = p1;
  out.p_err = p1 * best.err_ln_p1;
  out.g_fit = g_from_power_at_s1(p1, cp, hbar);
  out.g_err = out.g_fit * best.err_ln_p1;
  out.amplitude = best.a;
  out.amplitude_err = best.err_a;
  out.background = best.b;
  out.background_err = best.err_b;
  out.residual_norm = std::sqrt(best.chisq);
  out.iterations = best.iterations;
  return out;
}

}  // namespace coupler
