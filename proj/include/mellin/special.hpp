#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace mellin {

using cdouble = std::complex<double>;

inline double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

inline double norm_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

/// Complex log-gamma by the Lanczos approximation (g = 7, 9 coefficients).
///
/// The series gives Gamma(z + 1) and is valid for Re(z) > -1/2; dividing by z
/// extends it to Gamma(z) on the whole right half-plane without reflection.
/// The imaginary part is not reduced to the principal branch, so use the
/// result through exp() or through differences of log-gammas.
inline cdouble log_gamma(cdouble z) {
  static constexpr std::array<double, 9> kLanczos{
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double kG = 7.0;
  const double half_log_two_pi = 0.5 * std::log(2.0 * std::numbers::pi);

  cdouble series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    series += kLanczos[i] / (z + static_cast<double>(i));
  }
  const cdouble t = z + kG + 0.5;
  const cdouble log_gamma_z_plus_one = half_log_two_pi + (z + 0.5) * std::log(t) - t + std::log(series);
  return log_gamma_z_plus_one - std::log(z);
}

}  // namespace mellin
