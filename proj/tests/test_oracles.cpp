#include <gtest/gtest.h>

#include <mellin/mellin.hpp>

#include <chrono>

#include "fixtures/oracle_values.hpp"

using namespace mellin;

namespace {

BasketSpec basket(double rho) {
  BasketSpec b;
  b.strike = 100;
  b.maturity = 0.5;
  b.rate = 0.05;
  b.dividends = {0.02, 0.03};
  b.vols = {0.2, 0.3};
  b.corr = Eigen::MatrixXd::Identity(2, 2);
  b.corr(0, 1) = b.corr(1, 0) = rho;
  return b;
}

}  // namespace

TEST(Binomial, ReferenceCallWithTenThousandSteps) {
  EXPECT_NEAR(binomial_price(80, 100, 0.03, 0.07, 0.2, 0.5, 10000, OptionKind::AmerCall), 0.2194, 5e-5);
}

TEST(Binomial, EuropeanPutConvergesToClosedForm) {
  EXPECT_NEAR(binomial_price(100, 100, 0.05, 0.0, 0.2, 1, 10000, OptionKind::EuroPut),
              black_scholes(100, 100, 0.05, 0, 0.2, 1, true).price, 1e-3);
}

TEST(Binomial, MaturityLimitIsPayoff) {
  EXPECT_NEAR(binomial_price(90, 100, 0.05, 0.0, 0.2, 1e-12, 1, OptionKind::AmerPut), 10.0, 1e-8);
  EXPECT_NEAR(binomial_price(110, 100, 0.05, 0.0, 0.2, 1e-12, 1, OptionKind::EuroCall), 10.0, 1e-8);
  EXPECT_EQ(binomial_price(110, 100, 0.05, 0.0, 0.2, 0.0, 5, OptionKind::EuroPut), 0.0);
}

TEST(Binomial, SuccessiveDoublingsConverge) {
  double prev = binomial_price(80, 100, 0.03, 0.07, 0.2, 0.5, 100, OptionKind::AmerCall);
  double last = 1e9;
  for (int steps : {200, 400, 800, 1600}) {
    const double v = binomial_price(80, 100, 0.03, 0.07, 0.2, 0.5, steps, OptionKind::AmerCall);
    EXPECT_LT(std::abs(v - prev), last) << "steps=" << steps;
    last = std::abs(v - prev);
    prev = v;
  }
}

TEST(Binomial, RejectsBadProbability) {
  try {
    binomial_price(100, 100, 2.0, 0.0, 0.01, 1.0, 1, OptionKind::EuroPut);
    FAIL() << "expected InvalidProbability";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidProbability);
  }
}

TEST(BlackScholes, QuadratureFixtures) {
  EXPECT_NEAR(black_scholes(100, 100, 0.05, 0.0, 0.2, 1, true).price, fixtures::kBsPutQuadrature, 1e-12);
  EXPECT_NEAR(black_scholes(100, 100, 0.05, 0.03, 0.2, 1, true).price, fixtures::kBsPutQuadratureDiv3, 1e-12);
}

TEST(BlackScholes, PutCallParity) {
  for (double S : {70.0, 100.0, 135.0}) {
    const double c = black_scholes(S, 100, 0.04, 0.02, 0.3, 0.75, false).price;
    const double p = black_scholes(S, 100, 0.04, 0.02, 0.3, 0.75, true).price;
    EXPECT_NEAR(c - p, S * std::exp(-0.02 * 0.75) - 100 * std::exp(-0.04 * 0.75), 1e-12);
  }
}

TEST(BlackScholes, ShortMaturityLimit) {
  EXPECT_NEAR(black_scholes(90, 100, 0.05, 0.0, 0.2, 1e-12, true).price, 10.0, 1e-8);
  EXPECT_NEAR(black_scholes(110, 100, 0.05, 0.0, 0.2, 1e-12, false).price, 10.0, 1e-8);
}

TEST(MonteCarlo, SingleAssetMatchesClosedForm) {
  BasketSpec s = single_asset(100, 1, 0.05, 0.0, 0.2);
  McConfig cfg;
  cfg.paths = 200'000;
  const McResult r = mc_basket_euro_put(s, {100.0}, 1.0, cfg);
  EXPECT_LT(std::abs(r.price - black_scholes(100, 100, 0.05, 0, 0.2, 1, true).price), 3 * r.std_error);
}

TEST(MonteCarlo, DeterministicGivenSeed) {
  McConfig cfg;
  cfg.paths = 100'000;
  const McResult a = mc_basket_euro_put(basket(0.5), {50.0, 50.0}, 0.5, cfg);
  const McResult b = mc_basket_euro_put(basket(0.5), {50.0, 50.0}, 0.5, cfg);
  EXPECT_EQ(a.price, b.price);
  EXPECT_EQ(a.std_error, b.std_error);
  cfg.seed += 1;
  EXPECT_NE(mc_basket_euro_put(basket(0.5), {50.0, 50.0}, 0.5, cfg).price, a.price);
}

TEST(MonteCarlo, VanishingVolatilityIsDeterministic) {
  BasketSpec b = basket(0.0);
  b.vols = {1e-6, 1e-6};
  McConfig cfg;
  cfg.paths = 10'000;
  const McResult r = mc_basket_euro_put(b, {40.0, 45.0}, 0.5, cfg);
  const auto mu = riskneutral_drift(b);
  const double forward = 40 * std::exp(mu[0] * 0.5) + 45 * std::exp(mu[1] * 0.5);
  EXPECT_NEAR(r.price, std::exp(-0.05 * 0.5) * std::max(100 - forward, 0.0), 1e-6);
}

TEST(MonteCarlo, StrikeBelowSupportGivesZero) {
  BasketSpec b = basket(0.0);
  b.strike = 1e-300;
  McConfig cfg;
  cfg.paths = 10'000;
  EXPECT_EQ(mc_basket_euro_put(b, {50.0, 50.0}, 0.5, cfg).price, 0.0);
}

TEST(MonteCarlo, BasketWithinThreeStandardErrorsOfQuadrature) {
  const McResult r = mc_basket_euro_put(basket(0.5), {50.0, 50.0}, 0.5, McConfig{});
  EXPECT_LT(std::abs(r.price - fixtures::kBasketConditionalQuad), 3 * r.std_error);
}

TEST(MonteCarlo, RejectsIndefiniteCorrelation) {
  BasketSpec b = basket(0.0);
  b.dividends = {0, 0, 0};
  b.vols = {0.2, 0.2, 0.2};
  b.corr = Eigen::MatrixXd::Constant(3, 3, -0.9);
  b.corr.diagonal().setOnes();
  EXPECT_THROW(mc_basket_euro_put(b, {30.0, 30.0, 30.0}, 0.5, McConfig{}), Error);
}

TEST(DirectSum, MatchesFftAtLandingPoint) {
  const BasketSpec put = single_asset(100, 0.5, 0.07, 0.03, 0.2);
  const MellinFftGrid grid = build_grid(1, 16384, 1.0, {100.0}, 250);
  const double fft = price_at(price_surface(put, grid, 0.5, Style::AmericanPut), {100.0}).value;
  const double direct = price_direct_trapezoid(put, grid, 0.5, {100.0}, Style::AmericanPut);
  EXPECT_NEAR(direct, fft, 1e-10 * fft);
  // reference value is rounded to 4 decimals; same tolerance as the comparison table
  EXPECT_NEAR(direct, 4.7942, 2e-3);
}

TEST(DirectSum, MaturityLimitIsPayoff) {
  const BasketSpec spec = single_asset(100, 1, 0.05, 0.0, 0.2);
  const MellinFftGrid grid = build_grid(1, 16384, 1.0, {80.0}, 250);
  EXPECT_NEAR(price_direct_trapezoid(spec, grid, 0.0, {80.0}, Style::EuropeanPut), 20.0, 1e-4);
}

// A single direct price costs the same integrand assembly as the whole
// surface, so only the per-price cost is compared.
TEST(DirectSum, SurfaceIsCheaperPerPrice) {
  const BasketSpec spec = single_asset(100, 0.5, 0.07, 0.03, 0.2);
  const MellinFftGrid grid = build_grid(1, 16384, 1.0, {100.0}, 250);
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  price_surface(spec, grid, 0.5, Style::AmericanPut);
  const auto t1 = clock::now();
  price_direct_trapezoid(spec, grid, 0.5, {100.0}, Style::AmericanPut);
  const auto t2 = clock::now();
  const double surface_per_price = std::chrono::duration<double>(t1 - t0).count() / grid.N;
  EXPECT_LT(surface_per_price, std::chrono::duration<double>(t2 - t1).count());
}
