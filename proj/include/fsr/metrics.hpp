#pragma once

// Image quality (PSNR) and wall-clock timing helpers.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "fsr/core.hpp"

namespace fsr {

struct QualityReport {
  double psnr_db = 0.0;  // +inf when the images are identical
  double mse = 0.0;
  std::size_t pixel_count = 0;

  bool identical() const noexcept { return mse == 0.0; }
};

inline constexpr double kPeak = 255.0;

/// PSNR over all pixels with an 8-bit peak. Test values are clamped to [0, 255] first.
inline QualityReport psnr(const GrayImage& reference, const GrayImage& test) {
  if (reference.height() != test.height() || reference.width() != test.width())
    throw std::invalid_argument("image dimensions differ");
  const auto ref = reference.values();
  const auto tst = test.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const double d = ref[i] - std::clamp(tst[i], 0.0, kPeak);
    sum += d * d;
  }
  QualityReport q;
  q.pixel_count = ref.size();
  q.mse = sum / static_cast<double>(ref.size());
  q.psnr_db = q.mse == 0.0 ? std::numeric_limits<double>::infinity() : 10.0 * std::log10(kPeak * kPeak / q.mse);
  return q;
}

/// "inf" for identical images, otherwise fixed-point dB.
inline std::string format_psnr(double psnr_db) {
  if (std::isinf(psnr_db)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", psnr_db);
  return buf;
}

template <class T>
struct Timed {
  T result;
  double seconds = 0.0;
};

template <>
struct Timed<void> {
  double seconds = 0.0;
};

/// Monotonic wall time around `work()`. No warm-up; callers repeat as needed.
template <class F>
auto time_block(std::string_view /*label*/, F&& work) {
  using R = std::invoke_result_t<F>;
  const auto start = std::chrono::steady_clock::now();
  if constexpr (std::is_void_v<R>) {
    std::forward<F>(work)();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    return Timed<void>{dt.count()};
  } else {
    R r = std::forward<F>(work)();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    return Timed<R>{std::move(r), dt.count()};
  }
}

inline double median(std::vector<double> xs) {
  if (xs.empty()) throw std::invalid_argument("median of empty set");
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

/// Median wall time of `runs` executions of `work`.
template <class F>
double median_seconds(int runs, F&& work) {
  if (runs < 1) throw std::invalid_argument("runs must be >= 1");
  std::vector<double> t;
  t.reserve(static_cast<std::size_t>(runs));
  for (int i = 0; i < runs; ++i) t.push_back(time_block("run", work).seconds);
  return median(std::move(t));
}

inline double frames_per_second(std::size_t frames, double seconds) {
  return seconds > 0.0 ? static_cast<double>(frames) / seconds : std::numeric_limits<double>::infinity();
}

}  // namespace fsr
