#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <vector>

#include "mellin/error.hpp"
#include "mellin/fft.hpp"

namespace mellin {

/// Frequency lattice b_j = (j - N/2) delta and log-price lattice
/// s_k = (k - N/2) lambda with delta * lambda = 2 pi / N in every dimension.
struct MellinFftGrid {
  std::size_t n = 1;
  std::size_t N = 0;
  std::size_t M = 2;
  std::vector<double> a;
  std::vector<double> delta;
  std::vector<double> lambda;
  std::optional<std::vector<double>> target_logS;
  std::vector<std::size_t> landing_index;

  double b(std::size_t dim, std::size_t j) const {
    return (static_cast<double>(j) - static_cast<double>(N / 2)) * delta[dim];
  }
  double s(std::size_t dim, std::size_t k) const {
    return (static_cast<double>(k) - static_cast<double>(N / 2)) * lambda[dim];
  }
  double delta_b() const {
    double p = 1.0;
    for (double d : delta) p *= d;
    return p;
  }
  std::size_t total() const {
    std::size_t t = 1;
    for (std::size_t i = 0; i < n; ++i) t *= N;
    return t;
  }
};

inline void validate(const MellinFftGrid& g) {
  using detail::require;
  require(g.n >= 1, ErrorCode::InvalidArgument, "grid needs n >= 1");
  require(is_power_of_two(g.N) && g.N >= 4, ErrorCode::InvalidArgument, "grid N must be a power of two >= 4");
  require(g.M >= 2, ErrorCode::InvalidArgument, "grid M must be >= 2");
  require(g.a.size() == g.n && g.delta.size() == g.n && g.lambda.size() == g.n, ErrorCode::DimensionMismatch,
          "grid vectors must have one entry per dimension");
  for (std::size_t i = 0; i < g.n; ++i) {
    require(g.a[i] > 0, ErrorCode::Pole, "strip abscissa must be > 0");
    require(g.lambda[i] > 0 && g.delta[i] > 0, ErrorCode::InvalidArgument, "grid spacings must be > 0");
  }
}

/// Grid from an explicit log-price spacing.
inline MellinFftGrid make_grid(std::size_t n, std::size_t N, double a, double lambda, std::size_t M) {
  MellinFftGrid g;
  g.n = n;
  g.N = N;
  g.M = M;
  g.a.assign(n, a);
  g.lambda.assign(n, lambda);
  g.delta.assign(n, 2.0 * std::numbers::pi / (static_cast<double>(N) * lambda));
  validate(g);
  return g;
}

/// Grid whose log-price lattice passes through ln target_S[i] in each
/// dimension. The landing offset k - N/2 is round(ln S / lambda_pref), where
/// lambda_pref is the spacing that gives frequency step delta_pref; this
/// keeps delta close to delta_pref. A k_hint overrides the choice.
inline MellinFftGrid build_grid(std::size_t n, std::size_t N, double a, const std::vector<double>& target_S,
                                std::size_t M, std::optional<std::vector<std::size_t>> k_hint = std::nullopt,
                                double delta_pref = 0.25) {
  using detail::require;
  require(is_power_of_two(N) && N >= 4, ErrorCode::InvalidArgument, "grid N must be a power of two >= 4");
  require(target_S.size() == n, ErrorCode::DimensionMismatch, "one target price per dimension");
  require(!k_hint || k_hint->size() == n, ErrorCode::DimensionMismatch, "one k hint per dimension");
  require(delta_pref > 0, ErrorCode::InvalidArgument, "preferred frequency step must be > 0");

  MellinFftGrid g;
  g.n = n;
  g.N = N;
  g.M = M;
  g.a.assign(n, a);
  g.delta.resize(n);
  g.lambda.resize(n);
  g.landing_index.resize(n);
  std::vector<double> logs(n);
  const double half = static_cast<double>(N / 2);
  const double lambda_pref = 2.0 * std::numbers::pi / (static_cast<double>(N) * delta_pref);

  for (std::size_t i = 0; i < n; ++i) {
    require(target_S[i] > 0 && std::isfinite(target_S[i]), ErrorCode::InvalidArgument, "target price must be > 0");
    const double x = std::log(target_S[i]);
    logs[i] = x;
    long offset;
    if (k_hint) {
      offset = static_cast<long>((*k_hint)[i]) - static_cast<long>(N / 2);
    } else if (x == 0) {
      offset = 0;
    } else {
      offset = std::lround(x / lambda_pref);
      if (offset == 0) offset = x > 0 ? 1 : -1;
    }
    require(offset >= -static_cast<long>(N / 2) && offset <= static_cast<long>(N / 2) - 1, ErrorCode::NoAdmissibleK,
            "no lattice index can land on the target price");
    double lambda;
    if (offset == 0) {
      require(x == 0, ErrorCode::NoAdmissibleK, "k = N/2 lands only on S = 1");
      lambda = lambda_pref;
    } else {
      lambda = x / static_cast<double>(offset);
      require(lambda > 0, ErrorCode::NoAdmissibleK, "k hint lies on the wrong side of N/2 for this target");
    }
    require(lambda <= 1.0, ErrorCode::GridTooCoarse, "log-price spacing exceeds 1");
    g.lambda[i] = lambda;
    g.delta[i] = 2.0 * std::numbers::pi / (static_cast<double>(N) * lambda);
    g.landing_index[i] = static_cast<std::size_t>(static_cast<long>(half) + offset);
  }
  g.target_logS = logs;
  validate(g);
  return g;
}

}  // namespace mellin
