#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <shared_mutex>
#include <tuple>
#include <vector>

#include "mellin/spec.hpp"

namespace mellin {

/// Variants of the implicit critical-price approximation.
///  - Derived: delta = (sigma/2 + (q-r)/sigma)^2 + 2r, dividend factor e^{-q u}.
///    This is what smooth pasting with a constant boundary gives.
///  - Printed: delta = sigma/2 + (q-r)/sigma + 2r, dividend factor e^{+q u}.
///  - HalfVariance: Printed with sigma^2/2 in place of sigma/2.
enum class CapfForm { Derived, Printed, HalfVariance };

namespace detail {

struct CapfTerms {
  double delta;
  double sqrt_delta;
  double sqrt_shift;  // sqrt(delta - 2q)
  double dividend_sign;
};

inline CapfTerms capf_terms(double r, double q, double sigma, CapfForm form) {
  CapfTerms t{};
  switch (form) {
    case CapfForm::Derived: {
      const double m = sigma / 2 + (q - r) / sigma;
      t.delta = m * m + 2 * r;
      t.dividend_sign = -1.0;
      break;
    }
    case CapfForm::Printed:
      t.delta = sigma / 2 + (q - r) / sigma + 2 * r;
      t.dividend_sign = 1.0;
      break;
    case CapfForm::HalfVariance:
      t.delta = sigma * sigma / 2 + (q - r) / sigma + 2 * r;
      t.dividend_sign = 1.0;
      break;
  }
  require(t.delta > 0 && t.delta - 2 * q >= 0, ErrorCode::NegativeRadicand,
          "critical-price approximation needs delta > 0 and delta - 2q >= 0");
  t.sqrt_delta = std::sqrt(t.delta);
  t.sqrt_shift = std::sqrt(t.delta - 2 * q);
  return t;
}

}  // namespace detail

/// G(x) = x - RHS(x) for the single-asset approximation at time to expiry u > 0.
inline double capf_residual(double x, double u, const BasketSpec& spec, CapfForm form = CapfForm::Derived) {
  const double K = spec.strike, r = spec.rate, q = spec.dividends[0], sigma = spec.vols[0];
  const auto t = detail::capf_terms(r, q, sigma, form);
  const double su = std::sqrt(u);
  const double a = 2 * norm_cdf(std::sqrt(t.delta * u)) - 1;
  const double omega = (2 * q + sigma * t.sqrt_shift) / (2 * sigma * t.sqrt_delta) * a;
  const double kappa = (std::log(x / K) + (r - q + 0.5 * sigma * sigma) * u) / (sigma * su);
  const double denom =
      std::exp(t.dividend_sign * q * u) * (norm_cdf(kappa) - norm_cdf(t.sqrt_shift * su)) + omega + 0.5;
  return x - K * r / (sigma * t.sqrt_delta) * a / denom;
}

/// Brent's root finder on a sign-changing bracket. Stops once |f| <= ftol.
template <class F>
double brent_root(F&& f, double lo, double hi, double ftol, int max_iter = 200) {
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  detail::require(fa * fb <= 0, ErrorCode::NoBracket, "brent_root: no sign change on the bracket");
  if (std::abs(fa) < std::abs(fb)) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  double c = a, fc = fa, d = b - a;
  bool bisected = true;
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(fb) <= ftol || fb == 0) return b;
    double s;
    if (fa != fc && fb != fc) {
      s = a * fb * fc / ((fa - fb) * (fa - fc)) + b * fa * fc / ((fb - fa) * (fb - fc)) +
          c * fa * fb / ((fc - fa) * (fc - fb));
    } else {
      s = b - fb * (b - a) / (fb - fa);
    }
    const double mid = (3 * a + b) / 4;
    const double eps = 4 * std::numeric_limits<double>::epsilon() * std::abs(b);
    const bool outside = !((s > std::min(mid, b) && s < std::max(mid, b)));
    const bool slow = bisected ? std::abs(s - b) >= std::abs(b - c) / 2 : std::abs(s - b) >= std::abs(c - d) / 2;
    const bool tiny = bisected ? std::abs(b - c) < eps : std::abs(c - d) < eps;
    if (outside || slow || tiny) {
      s = (a + b) / 2;
      bisected = true;
    } else {
      bisected = false;
    }
    const double fs = f(s);
    d = c;
    c = b;
    fc = fb;
    if (fa * fs < 0) {
      b = s;
      fb = fs;
    } else {
      a = s;
      fa = fs;
    }
    if (std::abs(fa) < std::abs(fb)) {
      std::swap(a, b);
      std::swap(fa, fb);
    }
    if (std::abs(b - a) <= eps) return b;
  }
  return b;
}

/// Critical price S* of the single-asset put at time-to-expiry u = T - t.
/// At u = 0 the approximation is 0/0; the exact expiry limit K min(1, r/q)
/// is returned. With r = 0 there is no early exercise and S* = 0.
inline double critical_price_at_expiry_gap(double u, const BasketSpec& spec, CapfForm form = CapfForm::Derived) {
  validate(spec);
  detail::require(spec.n() == 1, ErrorCode::Unsupported, "critical price approximation is single-asset");
  detail::require(u >= 0, ErrorCode::InvalidArgument, "time to expiry must be >= 0");
  const double K = spec.strike, r = spec.rate, q = spec.dividends[0];
  if (r == 0) return 0.0;
  if (u == 0) return q > 0 ? K * std::min(1.0, r / q) : K;

  auto g = [&](double x) { return capf_residual(x, u, spec, form); };
  const double lo = K * 1e-6;
  double hi = K;
  if (g(lo) * g(hi) > 0) hi = 2 * K;
  detail::require(g(lo) * g(hi) <= 0, ErrorCode::NoBracket, "no sign change on [1e-6 K, 2K]");
  // tighter than the 1e-10 K requirement so the root itself is accurate to ~1e-10
  return brent_root(g, lo, hi, 1e-12 * K);
}

/// Same, parameterised by calendar time t in [0, T].
inline double critical_price_approx(double t, const BasketSpec& spec, CapfForm form = CapfForm::Derived) {
  detail::require(t >= 0 && t <= spec.maturity, ErrorCode::InvalidArgument, "t must lie in [0, T]");
  return critical_price_at_expiry_gap(spec.maturity - t, spec, form);
}

/// S* sampled on the pricer's time grid t_l = l tau / (M - 1).
/// values[l] is the boundary at time to expiry tau - t_l, i.e. the boundary
/// met by the premium term that has been discounted over t_l.
struct BoundaryCurve {
  std::vector<double> times;
  std::vector<double> values;
  std::uint64_t spec_hash = 0;

  std::size_t size() const { return values.size(); }

  /// Boundary at time to expiry u in [0, tau], linear between samples.
  double at_time_to_expiry(double u) const {
    detail::require(!values.empty(), ErrorCode::MissingBoundary, "empty boundary curve");
    const double tau = times.back();
    if (values.size() == 1 || tau == 0) return values.front();
    const double t = std::clamp(tau - u, 0.0, tau);
    const double pos = t / tau * static_cast<double>(values.size() - 1);
    const std::size_t l = std::min(static_cast<std::size_t>(pos), values.size() - 2);
    const double frac = pos - static_cast<double>(l);
    return values[l] * (1 - frac) + values[l + 1] * frac;
  }
};

namespace detail {

inline std::int64_t round_key(double x) { return std::llround(x * 1e12); }

using BoundaryKey = std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t, std::int64_t, std::size_t, int>;

inline std::uint64_t hash_key(const BoundaryKey& key) {
  // FNV-1a over the rounded fields
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  std::apply([&](auto... f) { (mix(static_cast<std::uint64_t>(f)), ...); }, key);
  return h;
}

struct BoundaryCache {
  std::shared_mutex mutex;
  std::map<BoundaryKey, std::shared_ptr<const BoundaryCurve>> curves;
};

inline BoundaryCache& boundary_cache() {
  static BoundaryCache cache;
  return cache;
}

}  // namespace detail

/// Samples the boundary at M points for an option with tau years left.
/// Results are cached by parameters rounded to 1e-12.
inline BoundaryCurve boundary_curve(const BasketSpec& spec, std::size_t M, double tau,
                                    CapfForm form = CapfForm::Derived) {
  validate(spec);
  detail::require(spec.n() == 1, ErrorCode::Unsupported, "boundary curves are single-asset");
  detail::require(M >= 2, ErrorCode::InvalidArgument, "boundary curve needs M >= 2");
  detail::require(tau > 0, ErrorCode::InvalidArgument, "tau must be > 0");

  const detail::BoundaryKey key{detail::round_key(spec.strike), detail::round_key(spec.rate),
                                detail::round_key(spec.dividends[0]), detail::round_key(spec.vols[0]),
                                detail::round_key(tau), M, static_cast<int>(form)};
  auto& cache = detail::boundary_cache();
  {
    std::shared_lock lock(cache.mutex);
    if (auto it = cache.curves.find(key); it != cache.curves.end()) return *it->second;
  }

  auto curve = std::make_shared<BoundaryCurve>();
  curve->times.resize(M);
  curve->values.resize(M);
  curve->spec_hash = detail::hash_key(key);
  for (std::size_t l = 0; l < M; ++l) {
    const double t_l = tau * static_cast<double>(l) / static_cast<double>(M - 1);
    curve->times[l] = t_l;
    // the last sample is exactly at expiry
    const double u = (l + 1 == M) ? 0.0 : tau - t_l;
    curve->values[l] = critical_price_at_expiry_gap(u, spec, form);
  }

  std::unique_lock lock(cache.mutex);
  auto [it, inserted] = cache.curves.emplace(key, std::move(curve));
  return *it->second;
}

inline void write_boundary_csv(std::ostream& out, const BoundaryCurve& curve) {
  out << "t,s_star\n";
  out.precision(17);
  for (std::size_t l = 0; l < curve.size(); ++l) out << curve.times[l] << ',' << curve.values[l] << '\n';
}

}  // namespace mellin
