#pragma once

#include <vector>

#include "mellin/oracles.hpp"

namespace mellin {

/// K - S*(t) minus the American value at S*(t), both inversion integrals
/// summed directly on the grid's frequency lattice. Zero would mean the
/// boundary satisfies the smooth-pasting identity exactly. Single asset.
inline double boundary_residual_cap(const BoundaryCurve& curve, double t, const BasketSpec& spec,
                                    const MellinFftGrid& grid, const PricerOptions& opt = {}) {
  detail::require(spec.n() == 1 && grid.n == 1, ErrorCode::Unsupported, "residual diagnostic is single-asset");
  detail::require(!curve.times.empty(), ErrorCode::MissingBoundary, "empty boundary curve");
  const double horizon = curve.times.back();
  detail::require(t >= 0 && t <= horizon, ErrorCode::InvalidArgument, "t outside the curve's time span");
  const double u = horizon - t;
  const double s_star = curve.at_time_to_expiry(u);

  // boundary seen by the premium over the remaining life u
  BoundaryCurve remaining;
  remaining.times.resize(grid.M);
  remaining.values.resize(grid.M);
  for (std::size_t l = 0; l < grid.M; ++l) {
    const double t_l = u * static_cast<double>(l) / static_cast<double>(grid.M - 1);
    remaining.times[l] = t_l;
    remaining.values[l] = curve.at_time_to_expiry(u - t_l);
  }
  const double value = price_direct_trapezoid(spec, grid, u, {s_star}, Style::AmericanPut, opt, &remaining);
  return spec.strike - s_star - value;
}

}  // namespace mellin
