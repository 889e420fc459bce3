#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <mutex>
#include <vector>

#include "mellin/error.hpp"

namespace mellin {

constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace detail {
// FFTW planning is not thread-safe; execution of a private plan is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace detail

/// In-place forward DFT of a row-major cube with `points` entries per axis,
/// kernel exp(-2 pi i j.k / N). No normalisation.
inline void fft_nd(std::vector<std::complex<double>>& data, std::size_t points, std::size_t dims) {
  detail::require(dims >= 1, ErrorCode::InvalidArgument, "fft_nd needs at least one dimension");
  std::size_t total = 1;
  for (std::size_t d = 0; d < dims; ++d) total *= points;
  detail::require(total == data.size(), ErrorCode::DimensionMismatch, "fft_nd size does not match points^dims");

  std::vector<int> shape(dims, static_cast<int>(points));
  auto* buffer = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    plan = fftw_plan_dft(static_cast<int>(dims), shape.data(), buffer, buffer, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  detail::require(plan != nullptr, ErrorCode::InvalidArgument, "FFTW could not create a plan");
  fftw_execute(plan);
  std::lock_guard lock(detail::fftw_planner_mutex());
  fftw_destroy_plan(plan);
}

inline void fft_inplace(std::vector<std::complex<double>>& data) { fft_nd(data, data.size(), 1); }

}  // namespace mellin
