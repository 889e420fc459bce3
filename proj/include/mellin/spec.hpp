#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "mellin/error.hpp"
#include "mellin/special.hpp"

namespace mellin {

using CVec = std::vector<cdouble>;

/// Contract and market data for a put on the sum of n assets.
struct BasketSpec {
  double strike = 100.0;
  double maturity = 1.0;
  double rate = 0.0;
  std::vector<double> dividends;
  std::vector<double> vols;
  Eigen::MatrixXd corr;

  std::size_t n() const { return vols.size(); }
};

inline BasketSpec single_asset(double strike, double maturity, double rate, double dividend, double vol) {
  BasketSpec spec;
  spec.strike = strike;
  spec.maturity = maturity;
  spec.rate = rate;
  spec.dividends = {dividend};
  spec.vols = {vol};
  spec.corr = Eigen::MatrixXd::Identity(1, 1);
  return spec;
}

constexpr double kPsdFloor = -1e-10;

/// Throws on any violated invariant. The correlation matrix may carry
/// eigenvalues down to kPsdFloor from rounding; those are clipped when the
/// covariance is formed.
inline void validate(const BasketSpec& spec) {
  using detail::require;
  const std::size_t n = spec.n();
  require(n >= 1, ErrorCode::InvalidArgument, "at least one asset is required");
  require(spec.dividends.size() == n, ErrorCode::DimensionMismatch, "dividends must have one entry per asset");
  require(static_cast<std::size_t>(spec.corr.rows()) == n && static_cast<std::size_t>(spec.corr.cols()) == n,
          ErrorCode::DimensionMismatch, "correlation matrix must be n x n");
  require(std::isfinite(spec.strike) && spec.strike > 0, ErrorCode::InvalidArgument, "strike must be > 0");
  require(std::isfinite(spec.maturity) && spec.maturity > 0, ErrorCode::InvalidArgument, "maturity must be > 0");
  require(std::isfinite(spec.rate) && spec.rate >= 0, ErrorCode::InvalidArgument, "rate must be >= 0");
  for (std::size_t i = 0; i < n; ++i) {
    require(std::isfinite(spec.dividends[i]) && spec.dividends[i] >= 0, ErrorCode::InvalidArgument,
            "dividends must be >= 0");
    require(std::isfinite(spec.vols[i]) && spec.vols[i] > 0, ErrorCode::InvalidArgument, "vols must be > 0");
  }
  for (std::size_t i = 0; i < n; ++i) {
    require(spec.corr(i, i) == 1.0, ErrorCode::InvalidArgument, "correlation diagonal must be 1");
    for (std::size_t j = 0; j < n; ++j) {
      const double rho = spec.corr(i, j);
      require(std::isfinite(rho) && rho >= -1.0 && rho <= 1.0, ErrorCode::InvalidArgument,
              "correlations must lie in [-1, 1]");
      require(rho == spec.corr(j, i), ErrorCode::InvalidArgument, "correlation matrix must be symmetric");
    }
  }
  if (n > 1) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(spec.corr, Eigen::EigenvaluesOnly);
    require(eig.eigenvalues().minCoeff() >= kPsdFloor, ErrorCode::InvalidArgument,
            "correlation matrix is not positive semidefinite");
  }
}

/// Covariance and risk-neutral drift derived from a spec.
struct CovStruct {
  Eigen::MatrixXd sigma;
  std::vector<double> mu;
};

inline std::vector<double> riskneutral_drift(const BasketSpec& spec) {
  std::vector<double> mu(spec.n());
  for (std::size_t i = 0; i < spec.n(); ++i) {
    mu[i] = spec.rate - spec.dividends[i] - 0.5 * spec.vols[i] * spec.vols[i];
  }
  return mu;
}

inline CovStruct make_cov(const BasketSpec& spec) {
  validate(spec);
  const std::size_t n = spec.n();
  Eigen::MatrixXd corr = spec.corr;
  if (n > 1) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(corr);
    if (eig.eigenvalues().minCoeff() < 0) {
      const Eigen::VectorXd clipped = eig.eigenvalues().cwiseMax(0.0);
      corr = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
    }
  }
  CovStruct cov;
  cov.sigma.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cov.sigma(i, j) = corr(i, j) * spec.vols[i] * spec.vols[j];
    }
  }
  cov.mu = riskneutral_drift(spec);
  return cov;
}

/// A point a + ib on the integration strip.
struct ComplexPoint {
  std::vector<double> re;
  std::vector<double> im;

  CVec w() const {
    detail::require(re.size() == im.size(), ErrorCode::DimensionMismatch, "ComplexPoint parts differ in length");
    CVec out(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
      detail::require(re[i] > 0, ErrorCode::Pole, "strip abscissa must be > 0");
      out[i] = {re[i], im[i]};
    }
    return out;
  }
};

}  // namespace mellin
