#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "mellin/boundary.hpp"
#include "mellin/detail/parallel.hpp"
#include "mellin/fft.hpp"
#include "mellin/grid.hpp"
#include "mellin/transforms.hpp"

namespace mellin {

/// Premium time grid. Both sample t_l = l tau / (M - 1).
///  - Literal: every sample weighted tau / M.
///  - Trapezoid: weight tau / (M - 1), halved at both ends.
enum class TimeRule { Literal, Trapezoid };

/// Frequency weights: Flat is the plain trapezoid sum; Simpson uses the
/// alternating composite weights.
enum class Weighting { Flat, Simpson };

/// The t_l = 0 premium slice has no Gaussian damping, so its transform
/// inverts to a Gibbs-rippled step. Exact replaces that one slice with the
/// early-exercise function itself; Transform keeps the truncated sum.
enum class InitialSlice { Exact, Transform };

enum class Style { EuropeanPut, AmericanPut, EarlyExercisePremium };

inline const char* to_string(Style s) {
  switch (s) {
    case Style::EuropeanPut: return "euro-put";
    case Style::AmericanPut: return "amer-put";
    case Style::EarlyExercisePremium: return "premium";
  }
  return "?";
}

struct PricerOptions {
  TimeRule time_rule = TimeRule::Literal;
  Weighting weighting = Weighting::Flat;
  InitialSlice initial_slice = InitialSlice::Exact;
  CapfForm capf = CapfForm::Derived;
  bool enforce_quality = true;
};

/// Sample times and weights of the premium integral.
struct TimeGrid {
  std::vector<double> t;
  std::vector<double> weight;
};

inline TimeGrid time_grid(std::size_t M, double tau, TimeRule rule) {
  detail::require(M >= 2, ErrorCode::InvalidArgument, "time grid needs M >= 2");
  TimeGrid g;
  g.t.resize(M);
  g.weight.resize(M);
  for (std::size_t l = 0; l < M; ++l) {
    g.t[l] = tau * static_cast<double>(l) / static_cast<double>(M - 1);
    g.weight[l] = rule == TimeRule::Literal ? tau / static_cast<double>(M) : tau / static_cast<double>(M - 1);
  }
  if (rule == TimeRule::Trapezoid) {
    g.weight.front() *= 0.5;
    g.weight.back() *= 0.5;
  }
  return g;
}

/// (3 + (-1)^{1 + sum j} - [sum j == 0]) / 3
inline double simpson_weight(std::span<const std::size_t> j) {
  std::size_t total = 0;
  for (std::size_t x : j) total += x;
  const double alternating = (total % 2 == 0) ? -1.0 : 1.0;
  const double kronecker = total == 0 ? 1.0 : 0.0;
  return (3.0 + alternating - kronecker) / 3.0;
}

namespace detail {

inline double parity_sign(std::span<const std::size_t> j) {
  std::size_t total = 0;
  for (std::size_t x : j) total += x;
  return total % 2 == 0 ? 1.0 : -1.0;
}

inline CVec strip_point(std::span<const std::size_t> j, const MellinFftGrid& grid) {
  CVec w(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) w[i] = {grid.a[i], grid.b(i, j[i])};
  return w;
}

inline void unflatten(std::size_t flat, std::size_t N, std::span<std::size_t> digits) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    digits[i] = flat % N;
    flat /= N;
  }
}

}  // namespace detail

/// zeta_E at lattice index j: (-1)^{sum j} theta(w) Phi(wi, tau) e^{-r tau}.
inline cdouble integrand_european(std::span<const std::size_t> j, const MellinFftGrid& grid,
                                  const BasketSpec& spec, double tau) {
  const CovStruct cov = make_cov(spec);
  const CVec w = detail::strip_point(j, grid);
  CVec u(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) u[i] = w[i] * cdouble(0.0, 1.0);
  return detail::parity_sign(j) * payoff_mellin(w, spec.strike) * char_function(u, tau, cov) *
         std::exp(-spec.rate * tau);
}

/// zeta_EEP at lattice index j and time sample l, with the boundary taken
/// at time to expiry tau - t_l (boundary.values[l]).
inline cdouble integrand_premium(std::span<const std::size_t> j, std::size_t l, const MellinFftGrid& grid,
                                 const BasketSpec& spec, double tau, const BoundaryCurve& boundary) {
  detail::require(l < boundary.size(), ErrorCode::MissingBoundary, "no boundary sample for this time index");
  const double s_star = boundary.values[l];
  if (s_star <= 0) return 0.0;
  const double t_l = tau * static_cast<double>(l) / static_cast<double>(grid.M - 1);
  const CovStruct cov = make_cov(spec);
  const CVec w = detail::strip_point(j, grid);
  CVec u(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) u[i] = w[i] * cdouble(0.0, 1.0);
  return detail::parity_sign(j) * early_exercise_mellin(w, s_star, spec) * char_function(u, t_l, cov) *
         std::exp(-spec.rate * t_l);
}

/// Where the integrand is evaluated: w, sum(w) and c(w) = -(Psi(wi) + r).
struct FreqPoint {
  std::span<const cdouble> w;
  cdouble sum_w;
  cdouble c;
};

/// Which boundary-dependent term of the premium a kernel differentiates.
enum class BoundaryParam { None, Rate, Dividend };

/// Linear functional applied under the inversion integral. The defaults
/// give the price: factor 1 on the European term, -1 on each premium slice.
struct Kernel {
  std::function<cdouble(const FreqPoint&)> european = [](const FreqPoint&) { return cdouble(1.0); };
  std::function<cdouble(const FreqPoint&, double t)> premium = [](const FreqPoint&, double) {
    return cdouble(-1.0);
  };
  BoundaryParam extra = BoundaryParam::None;
  std::size_t extra_asset = 0;
  std::vector<int> s_power;            // result multiplied by prod S_i^{-p_i}
  bool expiry_boundary_term = false;   // adds -f(S) with the current boundary
  bool is_price = true;                // clamp negatives, enforce quality
};

/// Option values on the full log-price lattice, row-major with the first
/// asset most significant.
struct PriceSurface {
  MellinFftGrid grid;
  std::vector<double> values;
  Style style = Style::EuropeanPut;
  double tau = 0;
  double imag_residual = 0;
  std::size_t clamped_points = 0;

  double at_index(std::span<const std::size_t> k) const {
    std::size_t flat = 0;
    for (std::size_t i = 0; i < grid.n; ++i) flat = flat * grid.N + k[i];
    return values.at(flat);
  }
};

namespace detail {

inline bool in_central_half(std::span<const std::size_t> k, std::size_t N) {
  for (std::size_t x : k) {
    if (x < N / 4 || x >= 3 * N / 4) return false;
  }
  return true;
}

inline cdouble boundary_derivative(BoundaryParam p, std::size_t asset, const FreqPoint& fp, cdouble log_beta,
                                   double s_star, double strike) {
  const double ls = std::log(s_star);
  switch (p) {
    case BoundaryParam::None: return 0.0;
    case BoundaryParam::Rate: return -strike * std::exp(log_beta + fp.sum_w * ls) / fp.sum_w;
    case BoundaryParam::Dividend:
      return std::exp(log_beta + (fp.sum_w + 1.0) * ls) * fp.w[asset] / (fp.sum_w * (fp.sum_w + 1.0));
  }
  return 0.0;
}

inline bool needs_boundary(Style style) { return style != Style::EuropeanPut; }

/// Exact inverse of the l = 0 premium slice (n = 1) at price S, before the
/// S-power scaling: the kernel polynomial acts on S^0 and S^1 as P(0), P(-1).
inline double exact_initial_slice(const Kernel& kernel, const BasketSpec& spec, const CovStruct& cov, double S,
                                  double s_star, double weight) {
  if (s_star <= 0 || S > s_star) return 0.0;
  const double r = spec.rate, q = spec.dividends[0], K = spec.strike;
  auto poly = [&](double x) {
    const cdouble w = x;
    const FreqPoint fp{std::span<const cdouble>(&w, 1), w, growth_exponent(std::span<const cdouble>(&w, 1), cov, r)};
    return kernel.premium(fp, 0.0).real();
  };
  double value = poly(0.0) * (-r * K) + poly(-1.0) * q * S;
  // minus the inverse of the differentiated transform: d_r f = -K, d_q f = S
  if (kernel.extra == BoundaryParam::Rate) value += K;
  if (kernel.extra == BoundaryParam::Dividend) value -= S;
  return weight * value;
}

}  // namespace detail

/// Evaluates the inversion of the kernel-weighted integrand on the whole
/// lattice with one n-dimensional FFT.
inline PriceSurface evaluate_surface(const BasketSpec& spec, const MellinFftGrid& grid, double tau, Style style,
                                     const PricerOptions& opt, const Kernel& kernel,
                                     const BoundaryCurve* boundary_in = nullptr) {
  using detail::require;
  validate(grid);
  const CovStruct cov = make_cov(spec);
  const std::size_t n = grid.n, N = grid.N;
  require(spec.n() == n, ErrorCode::DimensionMismatch, "spec and grid dimensions differ");
  require(tau > 0, ErrorCode::InvalidArgument, "tau must be > 0");
  require(kernel.s_power.empty() || kernel.s_power.size() == n, ErrorCode::DimensionMismatch,
          "kernel S-power has wrong length");

  const bool with_premium = detail::needs_boundary(style);
  require(!with_premium || n == 1, ErrorCode::Unsupported, "American pricing is implemented for one asset only");

  BoundaryCurve boundary;
  if (with_premium) {
    boundary = boundary_in ? *boundary_in : boundary_curve(spec, grid.M, tau, opt.capf);
    require(boundary.size() == grid.M, ErrorCode::MissingBoundary, "boundary curve length differs from M");
  }
  const TimeGrid tg = time_grid(grid.M, tau, opt.time_rule);
  const bool exact_slice = with_premium && opt.initial_slice == InitialSlice::Exact;
  const double euro_switch = style == Style::EarlyExercisePremium ? 0.0 : 1.0;
  const double log_k = std::log(spec.strike);
  const double r = spec.rate;

  std::vector<double> log_s_star;
  if (with_premium) {
    for (double s : boundary.values) log_s_star.push_back(s > 0 ? std::log(s) : 0.0);
  }

  const std::size_t total = grid.total();
  std::vector<cdouble> data(total);
  detail::parallel_for(total, [&](std::size_t begin, std::size_t end) {
    std::vector<std::size_t> j(n);
    CVec w(n);
    for (std::size_t flat = begin; flat < end; ++flat) {
      detail::unflatten(flat, N, j);
      for (std::size_t i = 0; i < n; ++i) w[i] = {grid.a[i], grid.b(i, j[i])};
      cdouble sw = 0.0;
      for (const auto& x : w) sw += x;
      const FreqPoint fp{w, sw, growth_exponent(w, cov, r)};
      const cdouble log_beta = log_multinomial_beta(w);
      const double sign = detail::parity_sign(j);
      const double alpha = opt.weighting == Weighting::Simpson ? simpson_weight(j) : 1.0;

      cdouble acc = 0.0;
      if (euro_switch != 0.0) {
        const cdouble theta = std::exp(log_beta + (1.0 + sw) * log_k + tau * fp.c) / (sw * (sw + 1.0));
        acc += kernel.european(fp) * theta;
      }
      if (with_premium) {
        cdouble qw = 0.0;
        for (std::size_t i = 0; i < n; ++i) qw += spec.dividends[i] * w[i];
        for (std::size_t l = exact_slice ? 1 : 0; l < grid.M; ++l) {
          const double s_star = boundary.values[l];
          if (s_star <= 0) continue;
          const double t = tg.t[l];
          const cdouble growth = std::exp(t * fp.c);
          const cdouble f_hat =
              std::exp(log_beta + sw * log_s_star[l]) / sw * (qw * s_star / (sw + 1.0) - r * spec.strike);
          cdouble term = kernel.premium(fp, t) * f_hat;
          if (kernel.extra != BoundaryParam::None) {
            term -= detail::boundary_derivative(kernel.extra, kernel.extra_asset, fp, log_beta, s_star, spec.strike);
          }
          acc += tg.weight[l] * term * growth;
        }
      }
      data[flat] = alpha * sign * acc;
    }
  });

  fft_nd(data, N, n);

  PriceSurface surface;
  surface.grid = grid;
  surface.style = style;
  surface.tau = tau;
  surface.values.resize(total);
  const double scale = grid.delta_b() / std::pow(2.0 * std::numbers::pi, static_cast<double>(n));
  const double neg_floor = -1e-6 * spec.strike;

  std::vector<std::size_t> k(n);
  std::size_t central = 0, bad_negative = 0;
  double imag_max = 0.0;
  for (std::size_t flat = 0; flat < total; ++flat) {
    detail::unflatten(flat, N, k);
    double damp = 0.0, log_power = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = grid.s(i, k[i]);
      damp += grid.a[i] * s;
      if (!kernel.s_power.empty()) log_power += kernel.s_power[i] * s;
    }
    const double power = std::exp(-log_power);
    const cdouble v = detail::parity_sign(k) * scale * std::exp(-damp) * data[flat] * power;
    double value = v.real();
    if (exact_slice) {
      const double S = std::exp(grid.s(0, k[0]));
      value += power * detail::exact_initial_slice(kernel, spec, cov, S, boundary.values[0], tg.weight[0]);
    }
    if (kernel.expiry_boundary_term && with_premium) {
      const double S = std::exp(grid.s(0, k[0]));
      if (boundary.values[0] > 0 && S <= boundary.values[0]) {
        value -= -r * spec.strike + spec.dividends[0] * S;
      }
    }
    const bool is_central = detail::in_central_half(k, N);
    if (is_central) {
      ++central;
      imag_max = std::max(imag_max, std::abs(v.imag()));
    }
    if (kernel.is_price && value < 0) {
      if (is_central && value < neg_floor) ++bad_negative;
      value = 0.0;
      ++surface.clamped_points;
    }
    surface.values[flat] = value;
  }
  surface.imag_residual = imag_max;

  if (kernel.is_price && opt.enforce_quality) {
    require(imag_max < 1e-6 * spec.strike, ErrorCode::ImagResidualTooLarge,
            "imaginary residual " + std::to_string(imag_max) + " exceeds 1e-6 K on the central lattice");
    require(static_cast<double>(bad_negative) <= 0.01 * static_cast<double>(central), ErrorCode::TooManyClamped,
            "more than 1% of central lattice points are materially negative");
  }
  return surface;
}

inline PriceSurface price_surface(const BasketSpec& spec, const MellinFftGrid& grid, double tau, Style style,
                                  const PricerOptions& opt = {}, const BoundaryCurve* boundary = nullptr) {
  return evaluate_surface(spec, grid, tau, style, opt, Kernel{}, boundary);
}

/// Value read off a surface.
struct PriceQuote {
  double value = 0;
  bool interpolated = false;
  double imag_residual = 0;
  std::size_t clamped_points = 0;
};

/// Surface value at S: exact lattice hit, otherwise multilinear
/// interpolation in log-price between the 2^n neighbours.
inline PriceQuote price_at(const PriceSurface& surface, const std::vector<double>& S) {
  const auto& g = surface.grid;
  detail::require(S.size() == g.n, ErrorCode::DimensionMismatch, "one price per asset");
  std::vector<std::size_t> lo(g.n);
  std::vector<double> frac(g.n);
  bool interpolated = false;
  for (std::size_t i = 0; i < g.n; ++i) {
    detail::require(S[i] > 0, ErrorCode::OutOfRange, "price must be > 0");
    const double x = std::log(S[i]);
    const double min_x = -static_cast<double>(g.N / 2) * g.lambda[i];
    const double max_x = (static_cast<double>(g.N / 2) - 1.0) * g.lambda[i];
    detail::require(x >= min_x - 1e-9 && x <= max_x + 1e-9, ErrorCode::OutOfRange,
                    "log price outside the lattice range");
    const double pos = x / g.lambda[i] + static_cast<double>(g.N / 2);
    const double nearest = std::round(pos);
    if (std::abs(nearest - pos) * g.lambda[i] <= 1e-9) {
      lo[i] = static_cast<std::size_t>(nearest);
      frac[i] = 0.0;
    } else {
      lo[i] = std::min(static_cast<std::size_t>(std::floor(pos)), g.N - 2);
      frac[i] = pos - static_cast<double>(lo[i]);
      interpolated = true;
    }
  }
  double value = 0.0;
  std::vector<std::size_t> k(g.n);
  for (std::size_t corner = 0; corner < (std::size_t{1} << g.n); ++corner) {
    double weight = 1.0;
    for (std::size_t i = 0; i < g.n; ++i) {
      const bool up = (corner >> i) & 1u;
      if (up && frac[i] == 0.0) {
        weight = 0.0;
        break;
      }
      k[i] = lo[i] + (up ? 1 : 0);
      weight *= up ? frac[i] : 1.0 - frac[i];
    }
    if (weight != 0.0) value += weight * surface.at_index(k);
  }
  return {value, interpolated, surface.imag_residual, surface.clamped_points};
}

/// FFT settings shared by the convenience pricers.
struct GridParams {
  std::size_t N = 16384;
  std::size_t M = 250;
  double a = 1.0;
  double delta_pref = 0.25;
  std::optional<std::vector<std::size_t>> k_hint;
};

/// Put on the basket, with the grid landing on S.
inline PriceQuote price_put(const BasketSpec& spec, const std::vector<double>& S, double tau, Style style,
                            const GridParams& gp = {}, const PricerOptions& opt = {}) {
  const MellinFftGrid grid = build_grid(spec.n(), gp.N, gp.a, S, gp.M, gp.k_hint, gp.delta_pref);
  return price_at(price_surface(spec, grid, tau, style, opt), S);
}

/// American call by symmetry: the put with spot and strike swapped and rate
/// and dividend swapped. The grid lands on ln K, the transformed spot.
inline PriceQuote price_american_call(double S, double K, double r, double q, double sigma, double tau,
                                      const GridParams& gp = {}, const PricerOptions& opt = {}) {
  const BasketSpec put = single_asset(S, tau, q, r, sigma);
  return price_put(put, {K}, tau, Style::AmericanPut, gp, opt);
}

/// European call by parity from the FFT put.
inline PriceQuote price_european_call(double S, double K, double r, double q, double sigma, double tau,
                                      const GridParams& gp = {}, const PricerOptions& opt = {}) {
  const BasketSpec put = single_asset(K, tau, r, q, sigma);
  PriceQuote quote = price_put(put, {S}, tau, Style::EuropeanPut, gp, opt);
  quote.value += S * std::exp(-q * tau) - K * std::exp(-r * tau);
  return quote;
}

inline void write_surface_csv(std::ostream& out, const PriceSurface& surface) {
  const auto& g = surface.grid;
  for (std::size_t i = 1; i <= g.n; ++i) out << "index_" << i << ',';
  for (std::size_t i = 1; i <= g.n; ++i) out << "logS_" << i << ',';
  for (std::size_t i = 1; i <= g.n; ++i) out << "S_" << i << ',';
  out << "value\n";
  out.precision(17);
  std::vector<std::size_t> k(g.n);
  for (std::size_t flat = 0; flat < surface.values.size(); ++flat) {
    detail::unflatten(flat, g.N, k);
    for (std::size_t i = 0; i < g.n; ++i) out << k[i] << ',';
    for (std::size_t i = 0; i < g.n; ++i) out << g.s(i, k[i]) << ',';
    for (std::size_t i = 0; i < g.n; ++i) out << std::exp(g.s(i, k[i])) << ',';
    out << surface.values[flat] << '\n';
  }
}

}  // namespace mellin
