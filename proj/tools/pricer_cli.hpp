#pragma once

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mellin/io.hpp"
#include "mellin/mellin.hpp"

namespace mellin::cli {

enum ExitCode { kOk = 0, kValidation = 2, kNumerical = 3, kIo = 4 };

struct RunConfig {
  std::string method = "fft";
  std::string style = "euro-put";
  std::vector<double> spot;
  double strike = std::nan("");
  double rate = std::nan("");
  std::vector<double> div;
  std::vector<double> vol;
  std::vector<double> corr;
  double tau = std::nan("");
  std::size_t grid_n = 16384;
  std::size_t grid_m = 250;
  double strip_a = 1.0;
  int dw_n = 250;
  double dw_l = 10.0;
  int steps = 10000;
  std::size_t paths = 1'000'000;
  std::uint64_t seed = 20240601;
  std::string time_rule = "literal";
  std::string weights = "flat";
  std::string initial_slice = "exact";
  std::string capf = "derived";
  std::string greek_mode = "kernel";
  std::vector<int> groupings{1, 2, 3};
  std::string out;
  std::string format = "json";
};

/// Round to 10 significant digits for printing.
inline double sig10(double x) {
  if (!std::isfinite(x) || x == 0) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return std::stod(buf);
}

inline std::string fmt10(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

inline int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::ImagResidualTooLarge:
    case ErrorCode::TooManyClamped:
    case ErrorCode::NoBracket:
    case ErrorCode::NegativeRadicand:
      return kNumerical;
    case ErrorCode::Io:
      return kIo;
    default:
      return kValidation;
  }
}

namespace detail {

inline void need(bool ok, const std::string& flag) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, "missing required flag " + flag);
}

template <class Enum>
Enum pick(const std::string& value, std::initializer_list<std::pair<const char*, Enum>> table, const char* flag) {
  for (const auto& [name, e] : table) {
    if (value == name) return e;
  }
  throw Error(ErrorCode::InvalidArgument, std::string("unknown value '") + value + "' for " + flag);
}

inline PricerOptions options(const RunConfig& c) {
  PricerOptions o;
  o.time_rule = pick<TimeRule>(c.time_rule, {{"literal", TimeRule::Literal}, {"trapezoid", TimeRule::Trapezoid}},
                               "--time-rule");
  o.weighting = pick<Weighting>(c.weights, {{"flat", Weighting::Flat}, {"simpson", Weighting::Simpson}}, "--weights");
  o.initial_slice = pick<InitialSlice>(
      c.initial_slice, {{"exact", InitialSlice::Exact}, {"transform", InitialSlice::Transform}}, "--initial-slice");
  o.capf = pick<CapfForm>(
      c.capf, {{"derived", CapfForm::Derived}, {"printed", CapfForm::Printed}, {"half-variance", CapfForm::HalfVariance}},
      "--capf");
  return o;
}

inline GridParams grid_params(const RunConfig& c) {
  GridParams gp;
  gp.N = c.grid_n;
  gp.M = c.grid_m;
  gp.a = c.strip_a;
  return gp;
}

/// Contract spec from the flags. strike/spot are those of the put.
inline BasketSpec basket(const RunConfig& c) {
  need(!c.spot.empty(), "--spot");
  need(!std::isnan(c.strike), "--strike");
  need(!std::isnan(c.rate), "--rate");
  need(!c.vol.empty(), "--vol");
  need(!std::isnan(c.tau), "--tau");
  const std::size_t n = c.spot.size();
  BasketSpec spec;
  spec.strike = c.strike;
  spec.maturity = c.tau;
  spec.rate = c.rate;
  spec.vols = c.vol;
  spec.dividends = c.div.empty() ? std::vector<double>(n, 0.0) : c.div;
  if (c.vol.size() == 1 && n > 1) spec.vols.assign(n, c.vol[0]);
  if (spec.dividends.size() == 1 && n > 1) spec.dividends.assign(n, spec.dividends[0]);
  spec.corr = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  if (!c.corr.empty()) {
    if (c.corr.size() != n * n) throw Error(ErrorCode::DimensionMismatch, "--corr needs n*n entries");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) spec.corr(i, j) = c.corr[i * n + j];
  }
  validate(spec);
  return spec;
}

inline bool is_call(const std::string& style) { return style == "euro-call" || style == "amer-call"; }
inline bool is_american(const std::string& style) { return style == "amer-put" || style == "amer-call"; }

inline void check_style(const std::string& style) {
  pick<int>(style, {{"euro-put", 0}, {"euro-call", 1}, {"amer-put", 2}, {"amer-call", 3}}, "--style");
}

/// Output sink: --out file, or the given stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorCode::Io, "cannot open output file " + path);
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }
  void finish() {
    out_->flush();
    if (!*out_) throw Error(ErrorCode::Io, "write failed");
  }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

}  // namespace detail

inline int cmd_price(const RunConfig& c, std::ostream& out) {
  using namespace detail;
  check_style(c.style);
  const BasketSpec spec = basket(c);
  const PricerOptions opt = options(c);
  const GridParams gp = grid_params(c);
  const std::size_t n = spec.n();
  const bool call = is_call(c.style), american = is_american(c.style);
  const double S = c.spot[0], K = spec.strike, r = spec.rate, q = spec.dividends[0], sigma = spec.vols[0];
  if (call || c.method != "fft") {
    if (c.method != "mc" && n != 1) throw Error(ErrorCode::Unsupported, "this method/style needs a single asset");
  }

  nlohmann::json j;
  j["method"] = c.method;
  j["style"] = c.style;
  nlohmann::json diag = nlohmann::json::object();
  double price = 0;

  auto from_quote = [&](const PriceQuote& pq) {
    diag["imag_residual"] = sig10(pq.imag_residual);
    diag["clamped_points"] = pq.clamped_points;
    diag["interpolated"] = pq.interpolated;
    return pq.value;
  };

  if (c.method == "fft") {
    if (!call) {
      price = from_quote(price_put(spec, c.spot, c.tau, american ? Style::AmericanPut : Style::EuropeanPut, gp, opt));
    } else if (american) {
      price = from_quote(price_american_call(S, K, r, q, sigma, c.tau, gp, opt));
    } else {
      price = from_quote(price_european_call(S, K, r, q, sigma, c.tau, gp, opt));
    }
  } else if (c.method == "dw") {
    DwConfig cfg{c.dw_n, c.dw_l, c.strip_a, c.grid_m};
    if (!call) {
      price = dw_price(S, c.tau, spec, cfg, american ? Style::AmericanPut : Style::EuropeanPut, opt);
    } else if (american) {
      price = dw_american_call(S, K, r, q, sigma, c.tau, cfg, opt);
    } else {
      price = dw_price(S, c.tau, spec, cfg, Style::EuropeanPut, opt) + S * std::exp(-q * c.tau) -
              K * std::exp(-r * c.tau);
    }
  } else if (c.method == "trapezoid") {
    // calls by symmetry or parity, as for the FFT path
    BasketSpec put = spec;
    double at = S;
    if (call && american) {
      put = single_asset(S, c.tau, q, r, sigma);
      at = K;
    }
    const MellinFftGrid grid = build_grid(1, gp.N, gp.a, {at}, gp.M, std::nullopt, gp.delta_pref);
    price = price_direct_trapezoid(put, grid, c.tau, {at}, american ? Style::AmericanPut : Style::EuropeanPut, opt);
    if (call && !american) price += S * std::exp(-q * c.tau) - K * std::exp(-r * c.tau);
  } else if (c.method == "binomial") {
    const OptionKind kind = call ? (american ? OptionKind::AmerCall : OptionKind::EuroCall)
                                 : (american ? OptionKind::AmerPut : OptionKind::EuroPut);
    price = binomial_price(S, K, r, q, sigma, c.tau, c.steps, kind);
  } else if (c.method == "bs") {
    if (american) throw Error(ErrorCode::Unsupported, "bs prices European styles only");
    price = black_scholes(S, K, r, q, sigma, c.tau, !call).price;
  } else if (c.method == "mc") {
    if (c.style != "euro-put") throw Error(ErrorCode::Unsupported, "mc prices euro-put baskets only");
    McConfig cfg;
    cfg.paths = c.paths;
    cfg.seed = c.seed;
    const McResult res = mc_basket_euro_put(spec, c.spot, c.tau, cfg);
    price = res.price;
    diag["std_error"] = sig10(res.std_error);
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown value '" + c.method + "' for --method");
  }

  j["price"] = sig10(price);
  j["diagnostics"] = diag;
  detail::Sink sink(c.out, out);
  if (c.format == "csv") {
    sink.stream() << "method,style,price\n" << c.method << ',' << c.style << ',' << fmt10(price) << '\n';
  } else {
    sink.stream() << j.dump(2) << '\n';
  }
  sink.finish();
  return kOk;
}

inline int cmd_greeks(const RunConfig& c, std::ostream& out) {
  using namespace detail;
  check_style(c.style);
  if (is_call(c.style)) throw Error(ErrorCode::Unsupported, "greeks are computed for put styles");
  const BasketSpec spec = basket(c);
  const PricerOptions opt = options(c);
  const GridParams gp = grid_params(c);
  const GreekMode mode =
      pick<GreekMode>(c.greek_mode, {{"kernel", GreekMode::Kernel}, {"printed", GreekMode::Printed}}, "--greek-mode");
  const Style style = is_american(c.style) ? Style::AmericanPut : Style::EuropeanPut;
  const std::size_t n = spec.n();
  const MellinFftGrid grid = build_grid(n, gp.N, gp.a, c.spot, gp.M, std::nullopt, gp.delta_pref);

  auto value = [&](GreekKind kind) {
    return sig10(price_at(greek_surface(kind, spec, grid, c.tau, style, opt, mode), c.spot).value);
  };
  auto per_asset = [&](GreekKind::Tag tag) {
    if (n == 1) return nlohmann::json(value({tag, 0, 0}));
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < n; ++i) arr.push_back(value({tag, i, 0}));
    return arr;
  };

  nlohmann::json j;
  j["delta"] = per_asset(GreekKind::Delta);
  j["gamma"] = per_asset(GreekKind::Gamma);
  j["theta"] = value({GreekKind::Theta, 0, 0});
  j["rho"] = value({GreekKind::Rho, 0, 0});
  j["nu"] = per_asset(GreekKind::Nu);
  j["xi"] = per_asset(GreekKind::Xi);
  if (n > 1) {
    nlohmann::json cross = nlohmann::json::array();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) cross.push_back({a + 1, b + 1, value({GreekKind::CrossDelta, a, b})});
    j["cross_deltas"] = cross;
  }
  detail::Sink sink(c.out, out);
  sink.stream() << j.dump(2) << '\n';
  sink.finish();
  return kOk;
}

inline int cmd_surface(const RunConfig& c, std::ostream& out) {
  using namespace detail;
  const Style style = pick<Style>(
      c.style, {{"euro-put", Style::EuropeanPut}, {"amer-put", Style::AmericanPut}, {"premium", Style::EarlyExercisePremium}},
      "--style");
  const BasketSpec spec = basket(c);
  const GridParams gp = grid_params(c);
  const MellinFftGrid grid = build_grid(spec.n(), gp.N, gp.a, c.spot, gp.M, std::nullopt, gp.delta_pref);
  const PriceSurface surface = price_surface(spec, grid, c.tau, style, options(c));
  detail::Sink sink(c.out, out);
  if (c.format == "csv") {
    write_surface_csv(sink.stream(), surface);
  } else {
    sink.stream() << surface_to_json(surface).dump() << '\n';
  }
  sink.finish();
  return kOk;
}

inline int cmd_boundary(const RunConfig& c, std::ostream& out) {
  using namespace detail;
  need(!std::isnan(c.strike), "--strike");
  need(!std::isnan(c.rate), "--rate");
  need(!c.vol.empty(), "--vol");
  need(!std::isnan(c.tau), "--tau");
  const BasketSpec spec = single_asset(c.strike, c.tau, c.rate, c.div.empty() ? 0.0 : c.div[0], c.vol[0]);
  const BoundaryCurve curve = boundary_curve(spec, c.grid_m, c.tau, options(c).capf);
  detail::Sink sink(c.out, out);
  write_boundary_csv(sink.stream(), curve);
  sink.finish();
  return kOk;
}

/// Published reference values for the American call comparison: K = 100,
/// tau = 0.5, S in {80, ..., 120}, three (r, q, sigma) groupings.
struct Table1Reference {
  double r, q, sigma;
  double fft[5];
  double dw[5];
};

inline const std::array<Table1Reference, 3>& table1_reference() {
  static const std::array<Table1Reference, 3> ref{{
      {0.03, 0.07, 0.2, {0.2198, 1.3894, 4.7942, 11.1269, 20.0594}, {0.2198, 1.3895, 4.7943, 11.1270, 20.0591}},
      {0.03, 0.07, 0.4, {2.6921, 5.7298, 10.2539, 16.2076, 23.4013}, {2.6921, 5.7297, 10.2538, 16.2074, 23.4010}},
      {0.07, 0.03, 0.3, {1.6643, 4.4946, 9.2505, 15.7974, 23.706}, {1.6644, 4.4947, 9.2506, 15.7975, 23.7062}},
  }};
  return ref;
}

struct Table1Row {
  int grouping;
  double S;
  double truth;
  double fft;
  double dw;
};

inline std::vector<Table1Row> table1_rows(const RunConfig& c) {
  const PricerOptions opt = detail::options(c);
  const GridParams gp = detail::grid_params(c);
  const DwConfig dw{c.dw_n, c.dw_l, c.strip_a, c.grid_m};
  std::vector<Table1Row> rows;
  for (int g : c.groupings) {
    if (g < 1 || g > 3) throw Error(ErrorCode::InvalidArgument, "--groupings takes values 1, 2, 3");
    const auto& ref = table1_reference()[g - 1];
    for (int i = 0; i < 5; ++i) {
      const double S = 80.0 + 10.0 * i;
      Table1Row row{g, S, 0, 0, 0};
      row.truth = binomial_price(S, 100.0, ref.r, ref.q, ref.sigma, 0.5, c.steps, OptionKind::AmerCall);
      row.fft = price_american_call(S, 100.0, ref.r, ref.q, ref.sigma, 0.5, gp, opt).value;
      row.dw = dw_american_call(S, 100.0, ref.r, ref.q, ref.sigma, 0.5, dw, opt);
      rows.push_back(row);
    }
  }
  return rows;
}

inline int cmd_table1(const RunConfig& c, std::ostream& out) {
  const auto rows = table1_rows(c);
  double fft_dev = 0, dw_dev = 0;
  detail::Sink sink(c.out, out);
  auto& s = sink.stream();
  s << "grouping,S,true,fft,dw\n";
  for (const auto& row : rows) {
    const auto& ref = table1_reference()[row.grouping - 1];
    const int i = static_cast<int>((row.S - 80.0) / 10.0);
    fft_dev = std::max(fft_dev, std::abs(row.fft - ref.fft[i]));
    dw_dev = std::max(dw_dev, std::abs(row.dw - ref.dw[i]));
    s << row.grouping << ',' << fmt10(row.S) << ',' << fmt10(row.truth) << ',' << fmt10(row.fft) << ','
      << fmt10(row.dw) << '\n';
  }
  s << "max_abs_dev_from_reference,,," << fmt10(fft_dev) << ',' << fmt10(dw_dev) << '\n';
  sink.finish();
  return fft_dev > 2e-3 ? kNumerical : kOk;
}

/// Parses argv and dispatches. All output goes to `out`, messages to `err`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mellin transform option pricer"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig c;

  app.set_config("--config", "", "flat key = value file; keys are flag names");
  app.add_option("--method", c.method, "fft|dw|trapezoid|binomial|bs|mc");
  app.add_option("--style", c.style, "euro-put|euro-call|amer-put|amer-call (surface: premium)");
  app.add_option("--spot", c.spot, "asset price; repeat for baskets");
  app.add_option("--strike", c.strike);
  app.add_option("--rate", c.rate);
  app.add_option("--div", c.div, "dividend rate; repeat for baskets");
  app.add_option("--vol", c.vol, "volatility; repeat for baskets");
  app.add_option("--corr", c.corr, "row-major correlation entries")->delimiter(',');
  app.add_option("--tau", c.tau, "time to expiry in years");
  app.add_option("--grid-n", c.grid_n);
  app.add_option("--grid-m", c.grid_m);
  app.add_option("--strip-a", c.strip_a);
  app.add_option("--dw-n", c.dw_n);
  app.add_option("--dw-l", c.dw_l);
  app.add_option("--steps", c.steps, "binomial steps");
  app.add_option("--paths", c.paths, "Monte Carlo paths");
  app.add_option("--seed", c.seed, "Monte Carlo seed");
  app.add_option("--time-rule", c.time_rule, "literal|trapezoid");
  app.add_option("--weights", c.weights, "flat|simpson");
  app.add_option("--initial-slice", c.initial_slice, "exact|transform");
  app.add_option("--capf", c.capf, "derived|printed|half-variance");
  app.add_option("--greek-mode", c.greek_mode, "kernel|printed");
  app.add_option("--groupings", c.groupings, "table1 groupings to run")->delimiter(',');
  app.add_option("--out", c.out, "output file (default stdout)");
  app.add_option("--format", c.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  auto* price = app.add_subcommand("price", "price one option");
  auto* greeks = app.add_subcommand("greeks", "sensitivities as JSON");
  auto* surface = app.add_subcommand("surface", "full lattice of put values");
  auto* boundary = app.add_subcommand("boundary", "critical price curve as CSV");
  auto* table1 = app.add_subcommand("table1", "American call comparison table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }

  try {
    if (*price) return cmd_price(c, out);
    if (*greeks) return cmd_greeks(c, out);
    if (*surface) return cmd_surface(c, out);
    if (*boundary) return cmd_boundary(c, out);
    if (*table1) return cmd_table1(c, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kValidation;
}

}  // namespace mellin::cli
