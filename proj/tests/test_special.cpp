#include <gtest/gtest.h>

#include <mellin/fft.hpp>
#include <mellin/special.hpp>

#include <numbers>
#include <random>

#include "fixtures/oracle_values.hpp"

using namespace mellin;

namespace {

// distance of x to the nearest multiple of 2 pi
double mod_two_pi(double x) {
  const double two_pi = 2.0 * std::numbers::pi;
  return std::abs(x - two_pi * std::round(x / two_pi));
}

}  // namespace

TEST(LogGamma, MatchesHighPrecisionValuesUpToBranch) {
  for (const auto& p : fixtures::kLogGamma) {
    const cdouble lg = log_gamma({p.re, p.im});
    const double scale = std::max(1.0, std::abs(cdouble(p.lg_re, p.lg_im)));
    EXPECT_NEAR(lg.real(), p.lg_re, 1e-12 * scale) << p.re << "+" << p.im << "i";
    EXPECT_LT(mod_two_pi(lg.imag() - p.lg_im), 1e-12 * scale) << p.re << "+" << p.im << "i";
  }
}

TEST(LogGamma, RecurrenceOnRightHalfPlane) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> re(0.05, 5.0), im(-300.0, 300.0);
  for (int i = 0; i < 200; ++i) {
    const cdouble z(re(gen), im(gen));
    // Gamma(z + 1) = z Gamma(z)
    const cdouble ratio = std::exp(log_gamma(z + 1.0) - log_gamma(z)) / z;
    EXPECT_NEAR(std::abs(ratio - 1.0), 0.0, 1e-11) << z;
  }
}

TEST(LogGamma, RealArgumentsAgreeWithStdLgamma) {
  for (double x : {0.1, 0.7, 1.5, 3.0, 12.25, 40.0}) {
    EXPECT_NEAR(log_gamma(x).real(), std::lgamma(x), 1e-12 * std::max(1.0, std::abs(std::lgamma(x))));
  }
}

TEST(NormalDistribution, KnownValues) {
  EXPECT_DOUBLE_EQ(norm_cdf(0.0), 0.5);
  EXPECT_NEAR(norm_cdf(1.959963984540054), 0.975, 1e-15);
  EXPECT_NEAR(norm_cdf(-8.0), 6.22096057427178e-16, 1e-28);
  EXPECT_NEAR(norm_pdf(0.0), 1.0 / std::sqrt(2.0 * std::numbers::pi), 1e-16);
}

TEST(Fft, MatchesNaiveForwardDft) {
  const std::size_t N = 32;
  std::mt19937_64 gen(3);
  std::normal_distribution<double> z;
  std::vector<cdouble> x(N);
  for (auto& v : x) v = {z(gen), z(gen)};
  std::vector<cdouble> y = x;
  fft_inplace(y);
  for (std::size_t k = 0; k < N; ++k) {
    cdouble acc = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      acc += x[j] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j * k) / N);
    }
    EXPECT_LT(std::abs(acc - y[k]), 1e-12);
  }
}

TEST(Fft, TwoDimensionalMatchesNaive) {
  const std::size_t N = 8;
  std::mt19937_64 gen(5);
  std::normal_distribution<double> z;
  std::vector<cdouble> x(N * N);
  for (auto& v : x) v = {z(gen), z(gen)};
  std::vector<cdouble> y = x;
  fft_nd(y, N, 2);
  for (std::size_t k1 = 0; k1 < N; ++k1)
    for (std::size_t k2 = 0; k2 < N; ++k2) {
      cdouble acc = 0.0;
      for (std::size_t j1 = 0; j1 < N; ++j1)
        for (std::size_t j2 = 0; j2 < N; ++j2)
          acc += x[j1 * N + j2] *
                 std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j1 * k1 + j2 * k2) / N);
      EXPECT_LT(std::abs(acc - y[k1 * N + k2]), 1e-12);
    }
}

// the power-of-two rule is enforced by the grid builder, not the transform
TEST(Fft, ArbitraryLengthMatchesNaiveDft) {
  std::vector<cdouble> x(12);
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = cdouble(std::cos(0.7 * j), std::sin(1.3 * j) - 0.2);
  auto y = x;
  fft_inplace(y);
  for (std::size_t k = 0; k < x.size(); ++k) {
    cdouble acc = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j)
      acc += x[j] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j * k) / x.size());
    EXPECT_LT(std::abs(acc - y[k]), 1e-12);
  }
}
