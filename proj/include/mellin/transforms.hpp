#pragma once

#include <cmath>
#include <complex>
#include <span>

#include "mellin/spec.hpp"

namespace mellin {

/// Psi(u) = u' Sigma u / 2 - i mu' u (bilinear, no conjugation).
inline cdouble char_exponent(std::span<const cdouble> u, const CovStruct& cov) {
  const std::size_t n = cov.mu.size();
  detail::require(u.size() == n, ErrorCode::DimensionMismatch, "char_exponent: argument has wrong length");
  cdouble quad = 0.0;
  cdouble lin = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) quad += u[i] * cov.sigma(i, j) * u[j];
    lin += cov.mu[i] * u[i];
  }
  return 0.5 * quad - cdouble(0.0, 1.0) * lin;
}

inline cdouble char_function(std::span<const cdouble> u, double t, const CovStruct& cov) {
  detail::require(t >= 0, ErrorCode::InvalidArgument, "char_function: time must be >= 0");
  return std::exp(-t * char_exponent(u, cov));
}

/// c(w) = -(Psi(wi) + r), so that Phi(wi, t) e^{-rt} = exp(t c(w)).
inline cdouble growth_exponent(std::span<const cdouble> w, const CovStruct& cov, double rate) {
  const std::size_t n = cov.mu.size();
  detail::require(w.size() == n, ErrorCode::DimensionMismatch, "growth_exponent: argument has wrong length");
  cdouble quad = 0.0;
  cdouble lin = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) quad += w[i] * cov.sigma(i, j) * w[j];
    lin += cov.mu[i] * w[i];
  }
  return 0.5 * quad - lin - rate;
}

namespace detail {
inline void require_strip(std::span<const cdouble> w) {
  for (const cdouble& wi : w) require(wi.real() > 0, ErrorCode::Pole, "Re(w) must be > 0");
}

inline cdouble sum_of(std::span<const cdouble> w) {
  cdouble s = 0.0;
  for (const cdouble& wi : w) s += wi;
  return s;
}
}  // namespace detail

inline cdouble log_multinomial_beta(std::span<const cdouble> w) {
  detail::require_strip(w);
  if (w.size() == 1) return 0.0;
  cdouble acc = 0.0;
  for (const cdouble& wi : w) acc += log_gamma(wi);
  return acc - log_gamma(detail::sum_of(w));
}

inline cdouble multinomial_beta(std::span<const cdouble> w) { return std::exp(log_multinomial_beta(w)); }

/// Transform of the basket put payoff (K - sum S)^+.
inline cdouble payoff_mellin(std::span<const cdouble> w, double strike) {
  detail::require(strike > 0, ErrorCode::InvalidArgument, "strike must be > 0");
  const cdouble sw = detail::sum_of(w);
  const cdouble log_num = log_multinomial_beta(w) + (1.0 + sw) * std::log(strike);
  return std::exp(log_num) / (sw * (sw + 1.0));
}

/// Transform of the early-exercise function (-rK + q'S) on {sum S <= s_star}.
inline cdouble early_exercise_mellin(std::span<const cdouble> w, double s_star, const BasketSpec& spec) {
  detail::require(w.size() == spec.n(), ErrorCode::DimensionMismatch, "early_exercise_mellin: wrong length");
  detail::require(s_star > 0, ErrorCode::InvalidArgument, "critical price must be > 0");
  const cdouble sw = detail::sum_of(w);
  cdouble qw = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) qw += spec.dividends[i] * w[i];
  const cdouble lead = std::exp(log_multinomial_beta(w) + sw * std::log(s_star)) / sw;
  return lead * (qw * s_star / (sw + 1.0) - spec.rate * spec.strike);
}

// Scalar overloads for the single-asset case.
inline cdouble payoff_mellin(cdouble w, double strike) { return payoff_mellin(std::span<const cdouble>(&w, 1), strike); }

inline cdouble early_exercise_mellin(cdouble w, double s_star, const BasketSpec& spec) {
  return early_exercise_mellin(std::span<const cdouble>(&w, 1), s_star, spec);
}

}  // namespace mellin
