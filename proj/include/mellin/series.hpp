#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "mellin/boundary.hpp"
#include "mellin/pricer.hpp"
#include "mellin/transforms.hpp"

namespace mellin {

/// Settings of the sine-cosine series inversion. x = -ln S must satisfy
/// |x| <= L / 2.
struct DwConfig {
  int N_terms = 250;
  double L = 10.0;
  double a = 1.0;
  std::size_t M = 250;
};

inline void validate(const DwConfig& cfg) {
  detail::require(cfg.N_terms >= 1, ErrorCode::InvalidArgument, "series needs at least one term");
  detail::require(cfg.L > 0, ErrorCode::InvalidArgument, "series half-range L must be > 0");
  detail::require(cfg.a > 0, ErrorCode::Pole, "strip abscissa must be > 0");
}

/// e^{-r tau} theta(w) Phi(wi; tau), single asset.
inline cdouble dw_g_hat(cdouble w, double tau, const BasketSpec& spec) {
  const CovStruct cov = make_cov(spec);
  const cdouble u = w * cdouble(0.0, 1.0);
  return std::exp(-spec.rate * tau) * payoff_mellin(w, spec.strike) *
         char_function(std::span<const cdouble>(&u, 1), tau, cov);
}

/// Time-summed premium transform on the same grid and weights as the FFT
/// pricer: sum_l weight_l e^{-r t_l} f(w, tau - t_l) Phi(wi; t_l).
inline cdouble dw_h_hat(cdouble w, double tau, const BasketSpec& spec, const BoundaryCurve& boundary,
                        TimeRule rule = TimeRule::Literal, std::size_t first_slice = 0) {
  const std::size_t M = boundary.size();
  detail::require(M >= 1, ErrorCode::MissingBoundary, "empty boundary curve");
  const CovStruct cov = make_cov(spec);
  const cdouble u = w * cdouble(0.0, 1.0);
  if (M == 1) {
    if (boundary.values[0] <= 0) return 0.0;
    return tau * early_exercise_mellin(w, boundary.values[0], spec);
  }
  const TimeGrid tg = time_grid(M, tau, rule);
  cdouble acc = 0.0;
  for (std::size_t l = first_slice; l < M; ++l) {
    if (boundary.values[l] <= 0) continue;
    acc += tg.weight[l] * std::exp(-spec.rate * tg.t[l]) * early_exercise_mellin(w, boundary.values[l], spec) *
           char_function(std::span<const cdouble>(&u, 1), tg.t[l], cov);
  }
  return acc;
}

/// Put price by the series inversion. AmericanPut adds the premium,
/// EarlyExercisePremium returns the premium alone. The t = 0 premium slice
/// is handled as in the FFT pricer.
inline double dw_price(double S, double tau, const BasketSpec& spec, const DwConfig& cfg, Style style,
                       const PricerOptions& opt = {}) {
  validate(cfg);
  detail::require(spec.n() == 1, ErrorCode::Unsupported, "series inversion is single-asset");
  detail::require(S > 0, ErrorCode::InvalidArgument, "price must be > 0");
  const double x = -std::log(S);
  detail::require(std::abs(x) <= cfg.L / 2, ErrorCode::RangeViolation, "|ln S| exceeds L / 2");

  std::optional<BoundaryCurve> boundary;
  if (style != Style::EuropeanPut) boundary = boundary_curve(spec, cfg.M, tau, opt.capf);
  const bool exact_slice = boundary && opt.initial_slice == InitialSlice::Exact;

  auto transform = [&](cdouble w) {
    cdouble v = 0.0;
    if (style != Style::EarlyExercisePremium) v += dw_g_hat(w, tau, spec);
    if (boundary) v -= dw_h_hat(w, tau, spec, *boundary, opt.time_rule, exact_slice ? 1 : 0);
    return v;
  };

  const double step = std::numbers::pi / cfg.L;
  double sum = 0.5 * transform(cfg.a).real();
  for (int j = 1; j <= cfg.N_terms; ++j) {
    const cdouble v = transform(cdouble(cfg.a, step * j));
    sum += v.real() * std::cos(step * j * x) - v.imag() * std::sin(step * j * x);
  }
  double value = std::exp(cfg.a * x) / cfg.L * sum;
  if (exact_slice && boundary->values[0] > 0 && S <= boundary->values[0]) {
    const double weight = time_grid(cfg.M, tau, opt.time_rule).weight[0];
    value += weight * (spec.rate * spec.strike - spec.dividends[0] * S);
  }
  return value;
}

inline double dw_american_call(double S, double K, double r, double q, double sigma, double tau,
                               const DwConfig& cfg = {}, const PricerOptions& opt = {}) {
  return dw_price(K, tau, single_asset(S, tau, q, r, sigma), cfg, Style::AmericanPut, opt);
}

}  // namespace mellin
