#pragma once

#include <Eigen/Cholesky>
#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "mellin/detail/parallel.hpp"
#include "mellin/pricer.hpp"

namespace mellin {

enum class OptionKind { EuroPut, EuroCall, AmerPut, AmerCall };

/// Cox-Ross-Rubinstein tree, node prices kept in log space.
inline double binomial_price(double S, double K, double r, double q, double sigma, double tau, int steps,
                             OptionKind kind) {
  using detail::require;
  require(steps >= 1, ErrorCode::InvalidArgument, "binomial tree needs at least one step");
  require(S > 0 && K > 0 && sigma > 0 && tau >= 0, ErrorCode::InvalidArgument, "invalid binomial inputs");
  const bool is_put = kind == OptionKind::EuroPut || kind == OptionKind::AmerPut;
  const bool american = kind == OptionKind::AmerPut || kind == OptionKind::AmerCall;
  auto payoff = [&](double spot) { return std::max(is_put ? K - spot : spot - K, 0.0); };
  if (tau == 0) return payoff(S);

  const double dt = tau / steps;
  const double log_u = sigma * std::sqrt(dt);
  const double u = std::exp(log_u), d = 1.0 / u;
  double p = (std::exp((r - q) * dt) - d) / (u - d);
  require(p >= -1e-12 && p <= 1.0 + 1e-12, ErrorCode::InvalidProbability,
          "risk-neutral probability outside [0, 1]; use more steps");
  p = std::clamp(p, 0.0, 1.0);
  const double disc = std::exp(-r * dt);
  const double log_s = std::log(S);

  // node (n, i) has price exp(log_s + (2i - n) log_u) = spot[2i - n + steps]
  std::vector<double> exercise(2 * static_cast<std::size_t>(steps) + 1);
  for (int m = 0; m <= 2 * steps; ++m) exercise[m] = payoff(std::exp(log_s + (m - steps) * log_u));

  std::vector<double> v(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) v[i] = exercise[2 * i];
  for (int n = steps - 1; n >= 0; --n) {
    for (int i = 0; i <= n; ++i) {
      double cont = disc * (p * v[i + 1] + (1 - p) * v[i]);
      if (american) cont = std::max(cont, exercise[2 * i - n + steps]);
      v[i] = cont;
    }
  }
  return v[0];
}

/// Dividend-adjusted Black-Scholes value and sensitivities. theta is dV/dtau.
struct BsResult {
  double price;
  double delta;
  double gamma;
  double theta;
  double rho;
  double vega;
  double xi;
};

inline BsResult black_scholes(double S, double K, double r, double q, double sigma, double tau, bool is_put) {
  detail::require(S > 0 && K > 0 && sigma > 0 && tau >= 0, ErrorCode::InvalidArgument, "invalid Black-Scholes inputs");
  if (tau == 0) {
    const double itm = is_put ? (S < K) : (S > K);
    return {std::max(is_put ? K - S : S - K, 0.0), itm ? (is_put ? -1.0 : 1.0) : 0.0, 0, 0, 0, 0, 0};
  }
  const double st = sigma * std::sqrt(tau);
  const double d1 = (std::log(S / K) + (r - q + 0.5 * sigma * sigma) * tau) / st;
  const double d2 = d1 - st;
  const double dq = std::exp(-q * tau), dr = std::exp(-r * tau);
  const double pdf = norm_pdf(d1);
  BsResult res{};
  res.gamma = dq * pdf / (S * st);
  res.vega = S * dq * pdf * std::sqrt(tau);
  const double decay = S * dq * pdf * sigma / (2 * std::sqrt(tau));
  if (is_put) {
    res.price = K * dr * norm_cdf(-d2) - S * dq * norm_cdf(-d1);
    res.delta = -dq * norm_cdf(-d1);
    res.theta = decay - r * K * dr * norm_cdf(-d2) + q * S * dq * norm_cdf(-d1);
    res.rho = -K * tau * dr * norm_cdf(-d2);
    res.xi = S * tau * dq * norm_cdf(-d1);
  } else {
    res.price = S * dq * norm_cdf(d1) - K * dr * norm_cdf(d2);
    res.delta = dq * norm_cdf(d1);
    res.theta = decay + r * K * dr * norm_cdf(d2) - q * S * dq * norm_cdf(d1);
    res.rho = K * tau * dr * norm_cdf(d2);
    res.xi = -S * tau * dq * norm_cdf(d1);
  }
  return res;
}

struct McConfig {
  std::size_t paths = 1'000'000;
  std::size_t steps = 1;  // terminal values are sampled exactly; kept for completeness
  std::uint64_t seed = 20240601;
  bool antithetic = true;
};

struct McResult {
  double price;
  double std_error;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Open-interval uniform from the top 53 bits, then inverse-CDF normal.
inline double normal_from_bits(std::uint64_t bits) {
  const double u = (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
}

}  // namespace detail

/// Discounted mean of (K - sum S_i(tau))^+ under correlated GBM. Samples
/// are drawn in fixed-size chunks, each with its own seeded generator, so the
/// result does not depend on the number of threads.
inline McResult mc_basket_euro_put(const BasketSpec& spec, const std::vector<double>& S0, double tau,
                                   const McConfig& cfg) {
  using detail::require;
  validate(spec);
  const std::size_t n = spec.n();
  require(S0.size() == n, ErrorCode::DimensionMismatch, "one spot per asset");
  require(cfg.paths >= 2, ErrorCode::InvalidArgument, "need at least two paths");
  require(tau >= 0, ErrorCode::InvalidArgument, "tau must be >= 0");
  Eigen::LLT<Eigen::MatrixXd> llt(spec.corr);
  require(llt.info() == Eigen::Success, ErrorCode::CholeskyFailure, "correlation matrix has no Cholesky factor");
  const Eigen::MatrixXd L = llt.matrixL();
  const std::vector<double> mu = riskneutral_drift(spec);
  const double disc = std::exp(-spec.rate * tau);
  const double sqrt_tau = std::sqrt(tau);

  // one sample = one path, or the average over an antithetic pair
  const std::size_t samples = cfg.antithetic ? cfg.paths / 2 : cfg.paths;
  constexpr std::size_t kChunk = 8192;
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<double> sums(chunks), squares(chunks);

  detail::parallel_for(
      chunks,
      [&](std::size_t begin, std::size_t end) {
        std::vector<double> z(n);
        for (std::size_t c = begin; c < end; ++c) {
          std::mt19937_64 gen(detail::splitmix64(cfg.seed ^ detail::splitmix64(c)));
          const std::size_t count = std::min(kChunk, samples - c * kChunk);
          double sum = 0, sq = 0;
          for (std::size_t s = 0; s < count; ++s) {
            for (std::size_t i = 0; i < n; ++i) z[i] = detail::normal_from_bits(gen());
            auto payoff = [&](double sign) {
              double basket = 0;
              for (std::size_t i = 0; i < n; ++i) {
                double lz = 0;
                for (std::size_t k = 0; k <= i; ++k) lz += L(i, k) * z[k];
                basket += S0[i] * std::exp(mu[i] * tau + spec.vols[i] * sqrt_tau * sign * lz);
              }
              return std::max(spec.strike - basket, 0.0);
            };
            const double y = cfg.antithetic ? 0.5 * (payoff(1.0) + payoff(-1.0)) : payoff(1.0);
            sum += y;
            sq += y * y;
          }
          sums[c] = sum;
          squares[c] = sq;
        }
      },
      1);

  double sum = 0, sq = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    sum += sums[c];
    sq += squares[c];
  }
  const double m = static_cast<double>(samples);
  const double mean = sum / m;
  const double var = std::max(sq / m - mean * mean, 0.0) * m / (m - 1);
  return {disc * mean, disc * std::sqrt(var / m)};
}

/// Trapezoid sum of the inversion integral at a single price vector S,
/// without the FFT: Delta_b / (2 pi)^n sum_j G(w_j) prod S_i^{-w_j,i}.
/// Follows the same options as the FFT pricer so the two agree on lattice points.
inline double price_direct_trapezoid(const BasketSpec& spec, const MellinFftGrid& grid, double tau,
                                     const std::vector<double>& S, Style style, const PricerOptions& opt = {},
                                     const BoundaryCurve* boundary_in = nullptr) {
  using detail::require;
  validate(grid);
  const CovStruct cov = make_cov(spec);
  const std::size_t n = grid.n, N = grid.N;
  require(spec.n() == n && S.size() == n, ErrorCode::DimensionMismatch, "dimension mismatch");
  const bool with_premium = style != Style::EuropeanPut;
  require(!with_premium || n == 1, ErrorCode::Unsupported, "American pricing is implemented for one asset only");

  BoundaryCurve boundary;
  if (with_premium) {
    boundary = boundary_in ? *boundary_in : boundary_curve(spec, grid.M, tau, opt.capf);
    require(boundary.size() == grid.M, ErrorCode::MissingBoundary, "boundary curve length differs from M");
  }
  const TimeGrid tg = time_grid(grid.M, tau, opt.time_rule);
  const bool exact_slice = with_premium && opt.initial_slice == InitialSlice::Exact;

  std::vector<double> log_s(n);
  for (std::size_t i = 0; i < n; ++i) log_s[i] = std::log(S[i]);

  const std::size_t total = grid.total();
  std::vector<std::size_t> j(n);
  CVec w(n), u(n);
  cdouble acc = 0.0;
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (std::size_t i = n; i-- > 0;) {
      j[i] = rest % N;
      rest /= N;
    }
    cdouble log_kernel = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = {grid.a[i], grid.b(i, j[i])};
      u[i] = w[i] * cdouble(0.0, 1.0);
      log_kernel -= w[i] * log_s[i];
    }
    cdouble g = 0.0;
    if (style != Style::EarlyExercisePremium) {
      g += payoff_mellin(w, spec.strike) * char_function(u, tau, cov) * std::exp(-spec.rate * tau);
    }
    if (with_premium) {
      for (std::size_t l = exact_slice ? 1 : 0; l < grid.M; ++l) {
        if (boundary.values[l] <= 0) continue;
        g -= tg.weight[l] * early_exercise_mellin(w, boundary.values[l], spec) * char_function(u, tg.t[l], cov) *
             std::exp(-spec.rate * tg.t[l]);
      }
    }
    const double alpha = opt.weighting == Weighting::Simpson ? simpson_weight(j) : 1.0;
    acc += alpha * g * std::exp(log_kernel);
  }
  double value = (grid.delta_b() / std::pow(2.0 * std::numbers::pi, static_cast<double>(n)) * acc).real();
  if (exact_slice && boundary.values[0] > 0 && S[0] <= boundary.values[0]) {
    value += tg.weight[0] * (spec.rate * spec.strike - spec.dividends[0] * S[0]);
  }
  return value;
}

}  // namespace mellin
