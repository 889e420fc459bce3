#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "mellin/pricer.hpp"

namespace mellin {

/// Sensitivity selector. Asset indices are zero-based.
struct GreekKind {
  enum Tag { Delta, CrossDelta, Gamma, Theta, Rho, Nu, Xi };
  Tag tag = Delta;
  std::size_t i = 0;
  std::size_t j = 0;
};

/// Kernel: multipliers obtained by differentiating S^{-w}, exp(t c(w)) and
/// the early-exercise transform. Printed: the multipliers in the form they
/// are usually displayed, kept for comparison.
enum class GreekMode { Kernel, Printed };

inline std::string to_string(const GreekKind& k) {
  switch (k.tag) {
    case GreekKind::Delta: return "delta";
    case GreekKind::CrossDelta: return "cross_delta";
    case GreekKind::Gamma: return "gamma";
    case GreekKind::Theta: return "theta";
    case GreekKind::Rho: return "rho";
    case GreekKind::Nu: return "nu";
    case GreekKind::Xi: return "xi";
  }
  return "?";
}

namespace detail {

inline void validate_kind(const GreekKind& kind, std::size_t n) {
  const bool uses_i = kind.tag == GreekKind::Delta || kind.tag == GreekKind::CrossDelta ||
                      kind.tag == GreekKind::Gamma || kind.tag == GreekKind::Nu || kind.tag == GreekKind::Xi;
  if (uses_i) require(kind.i < n, ErrorCode::InvalidArgument, "greek asset index out of range");
  if (kind.tag == GreekKind::CrossDelta) {
    require(kind.j < n, ErrorCode::InvalidArgument, "greek asset index out of range");
    require(kind.i != kind.j, ErrorCode::InvalidArgument, "cross delta needs two different assets");
  }
}

}  // namespace detail

/// Kernel whose inversion gives the requested sensitivity at tau.
inline Kernel greek_kernel(const GreekKind& kind, const BasketSpec& spec, double tau,
                           GreekMode mode = GreekMode::Kernel) {
  detail::validate_kind(kind, spec.n());
  const std::size_t n = spec.n();
  const std::size_t i = kind.i, j = kind.j;
  const bool printed = mode == GreekMode::Printed;
  const std::vector<double> vols = spec.vols;
  const Eigen::MatrixXd corr = spec.corr;

  Kernel k;
  k.is_price = false;
  switch (kind.tag) {
    case GreekKind::Delta:
      k.european = [i](const FreqPoint& p) { return -p.w[i]; };
      k.premium = [i](const FreqPoint& p, double) { return p.w[i]; };
      k.s_power.assign(n, 0);
      k.s_power[i] = 1;
      break;
    case GreekKind::CrossDelta: {
      const double sign = printed ? -1.0 : 1.0;
      k.european = [i, j, sign](const FreqPoint& p) { return sign * p.w[i] * p.w[j]; };
      k.premium = [i, j, sign](const FreqPoint& p, double) { return -sign * p.w[i] * p.w[j]; };
      k.s_power.assign(n, 0);
      k.s_power[i] = 1;
      k.s_power[j] = 1;
      break;
    }
    case GreekKind::Gamma:
      if (printed) {
        k.european = [i](const FreqPoint& p) { return -p.w[i] * (1.0 - p.w[i]); };
        k.premium = [i](const FreqPoint& p, double) { return -p.w[i] * (1.0 - p.w[i]); };
      } else {
        k.european = [i](const FreqPoint& p) { return p.w[i] * (p.w[i] + 1.0); };
        k.premium = [i](const FreqPoint& p, double) { return -p.w[i] * (p.w[i] + 1.0); };
      }
      k.s_power.assign(n, 0);
      k.s_power[i] = 2;
      break;
    case GreekKind::Theta:
      k.european = [](const FreqPoint& p) { return p.c; };
      if (printed) {
        k.premium = [](const FreqPoint& p, double) { return -p.c - 1.0; };
      } else {
        k.premium = [](const FreqPoint& p, double) { return -p.c; };
        k.expiry_boundary_term = true;
      }
      break;
    case GreekKind::Rho:
      if (printed) {
        k.european = [tau](const FreqPoint& p) { return -tau * tau * (p.sum_w - 1.0); };
        k.premium = [](const FreqPoint& p, double t) { return -(p.sum_w - 1.0) * t; };
      } else {
        k.european = [tau](const FreqPoint& p) { return -tau * (p.sum_w + 1.0); };
        k.premium = [](const FreqPoint& p, double t) { return t * (p.sum_w + 1.0); };
        k.extra = BoundaryParam::Rate;
      }
      break;
    case GreekKind::Nu: {
      std::function<cdouble(const FreqPoint&)> bracket;
      if (printed) {
        bracket = [vols, corr, n](const FreqPoint& p) {
          cdouble cross = 0.0, own = 0.0;
          for (std::size_t a = 0; a < n; ++a) {
            own += vols[a] * p.w[a] * (p.w[a] - 1.0);
            for (std::size_t b = 0; b < n; ++b) {
              if (a != b) cross += corr(a, b) * vols[b] * p.w[a] * p.w[b];
            }
          }
          return 0.5 * cross + own;
        };
      } else {
        bracket = [vols, corr, n, i](const FreqPoint& p) {
          cdouble v = vols[i] * p.w[i] * (p.w[i] + 1.0);
          for (std::size_t l = 0; l < n; ++l) {
            if (l != i) v += corr(i, l) * vols[l] * p.w[i] * p.w[l];
          }
          return v;
        };
      }
      k.european = [bracket, tau](const FreqPoint& p) { return tau * bracket(p); };
      k.premium = [bracket](const FreqPoint& p, double t) { return -t * bracket(p); };
      break;
    }
    case GreekKind::Xi:
      if (printed) {
        k.european = [i, tau](const FreqPoint& p) { return -tau * p.w[i]; };
        k.premium = [i](const FreqPoint& p, double t) { return t * p.w[i]; };
      } else {
        k.european = [i, tau](const FreqPoint& p) { return tau * p.w[i]; };
        k.premium = [i](const FreqPoint& p, double t) { return -t * p.w[i]; };
        k.extra = BoundaryParam::Dividend;
        k.extra_asset = i;
      }
      break;
  }
  return k;
}

/// (European-term factor, premium-term factor) multiplying the inversion
/// integrand at w for prices S, option life tau and premium time t. The
/// premium factor of the price itself is -1.
inline std::pair<cdouble, cdouble> greek_multiplier(const GreekKind& kind, std::span<const cdouble> w,
                                                    const std::vector<double>& S, double tau, double t,
                                                    const BasketSpec& spec, GreekMode mode = GreekMode::Kernel) {
  detail::require(w.size() == spec.n() && S.size() == spec.n(), ErrorCode::DimensionMismatch,
                  "greek_multiplier: wrong vector lengths");
  const Kernel k = greek_kernel(kind, spec, tau, mode);
  const CovStruct cov = make_cov(spec);
  cdouble sw = 0.0;
  for (const auto& x : w) sw += x;
  const FreqPoint p{w, sw, growth_exponent(w, cov, spec.rate)};
  double scale = 1.0;
  for (std::size_t i = 0; i < k.s_power.size(); ++i) scale *= std::pow(S[i], -k.s_power[i]);
  return {scale * k.european(p), scale * k.premium(p, t)};
}

/// Sensitivity surface on the lattice.
inline PriceSurface greek_surface(const GreekKind& kind, const BasketSpec& spec, const MellinFftGrid& grid,
                                  double tau, Style style, const PricerOptions& opt = {},
                                  GreekMode mode = GreekMode::Kernel) {
  return evaluate_surface(spec, grid, tau, style, opt, greek_kernel(kind, spec, tau, mode));
}

/// Sensitivity at S with the grid landing on S.
inline double greek(const GreekKind& kind, const std::vector<double>& S, double tau, const BasketSpec& spec,
                    Style style, const GridParams& gp = {}, const PricerOptions& opt = {},
                    GreekMode mode = GreekMode::Kernel) {
  const MellinFftGrid grid = build_grid(spec.n(), gp.N, gp.a, S, gp.M, gp.k_hint, gp.delta_pref);
  return price_at(greek_surface(kind, spec, grid, tau, style, opt, mode), S).value;
}

/// Central finite difference of the FFT price with bump h = h_rel max(|x|, 1).
/// Spot bumps keep the landing index fixed so the grid moves smoothly.
/// Rate and dividend bumps fall back to one-sided differences at zero.
inline double greek_fd(const GreekKind& kind, const std::vector<double>& S, double tau, const BasketSpec& spec,
                       Style style, double h_rel, const GridParams& gp = {}, const PricerOptions& opt = {}) {
  detail::require(h_rel > 0 && h_rel <= 1e-2, ErrorCode::InvalidArgument, "h_rel must lie in (0, 1e-2]");
  detail::validate_kind(kind, spec.n());
  const MellinFftGrid base = build_grid(spec.n(), gp.N, gp.a, S, gp.M, gp.k_hint, gp.delta_pref);
  GridParams fixed = gp;
  fixed.k_hint = base.landing_index;

  auto price = [&](const BasketSpec& sp, const std::vector<double>& spot, double t) {
    return price_put(sp, spot, t, style, fixed, opt).value;
  };
  auto bump = [&](double x) { return h_rel * std::max(std::abs(x), 1.0); };
  auto spot_with = [&](std::size_t i, double d) {
    std::vector<double> s = S;
    s[i] += d;
    return s;
  };
  // derivative of g around x, one-sided if x - h would go negative
  auto diff = [&](double x, auto&& g, bool nonnegative) {
    const double h = bump(x);
    if (nonnegative && x - h < 0) return (g(x + h) - g(x)) / h;
    return (g(x + h) - g(x - h)) / (2 * h);
  };

  switch (kind.tag) {
    case GreekKind::Delta: {
      const double h = bump(S[kind.i]);
      return (price(spec, spot_with(kind.i, h), tau) - price(spec, spot_with(kind.i, -h), tau)) / (2 * h);
    }
    case GreekKind::Gamma: {
      const double h = bump(S[kind.i]);
      return (price(spec, spot_with(kind.i, h), tau) - 2 * price(spec, S, tau) +
              price(spec, spot_with(kind.i, -h), tau)) /
             (h * h);
    }
    case GreekKind::CrossDelta: {
      const double hi = bump(S[kind.i]), hj = bump(S[kind.j]);
      auto at = [&](double di, double dj) {
        std::vector<double> s = S;
        s[kind.i] += di;
        s[kind.j] += dj;
        return price(spec, s, tau);
      };
      return (at(hi, hj) - at(hi, -hj) - at(-hi, hj) + at(-hi, -hj)) / (4 * hi * hj);
    }
    case GreekKind::Theta:
      return diff(tau, [&](double t) { return price(spec, S, t); }, true);
    case GreekKind::Rho:
      return diff(spec.rate, [&](double r) {
        BasketSpec sp = spec;
        sp.rate = r;
        return price(sp, S, tau);
      }, true);
    case GreekKind::Nu:
      return diff(spec.vols[kind.i], [&](double v) {
        BasketSpec sp = spec;
        sp.vols[kind.i] = v;
        return price(sp, S, tau);
      }, true);
    case GreekKind::Xi:
      return diff(spec.dividends[kind.i], [&](double q) {
        BasketSpec sp = spec;
        sp.dividends[kind.i] = q;
        return price(sp, S, tau);
      }, true);
  }
  return 0.0;
}

}  // namespace mellin
