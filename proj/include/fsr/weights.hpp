#pragma once

// Spatial weighting, its spectrum, and the frequency weighting of a support block.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fsr/core.hpp"
#include "fsr/dft.hpp"

namespace fsr {

/// w[m,n] = rho^dist(m,n) for known samples, 0 elsewhere. The distance is
/// measured from the continuous block center ((S-1)/2, (S-1)/2).
inline RealGrid spatial_weight(int support, double rho_hat, const MaskGrid& mask) {
  if (!(rho_hat > 0.0 && rho_hat < 1.0)) throw std::invalid_argument("rho must lie in (0, 1)");
  if (mask.rows() != support || mask.cols() != support)
    throw std::invalid_argument("mask does not match support size");
  const double center = (support - 1) / 2.0;
  RealGrid w(support, support, 0.0);
  for (int m = 0; m < support; ++m) {
    for (int n = 0; n < support; ++n) {
      if (!mask(m, n)) continue;
      const double dm = m - center;
      const double dn = n - center;
      w(m, n) = std::pow(rho_hat, std::sqrt(dm * dm + dn * dn));
    }
  }
  return w;
}

/// Low-frequency prior on folded indices k~ = S/2 - |k - S/2|:
///   w_f[k,l] = (1 - sqrt(2) * sqrt(k~^2/S^2 + l~^2/S^2))^2
inline RealGrid frequency_weight(int support) {
  if (support < 2) throw std::invalid_argument("support size must be >= 2");
  const double s = support;
  const double half = s / 2.0;
  RealGrid wf(support, support, 0.0);
  for (int k = 0; k < support; ++k) {
    const double kf = half - std::abs(k - half);
    for (int l = 0; l < support; ++l) {
      const double lf = half - std::abs(l - half);
      const double inner = 1.0 - std::numbers::sqrt2 * std::sqrt(kf * kf / (s * s) + lf * lf / (s * s));
      wf(k, l) = std::max(0.0, inner * inner);
    }
  }
  return wf;
}

/// Unnormalized forward DFT of the spatial weight; W[0,0] = sum of w.
inline ComplexGrid weight_spectrum(const RealGrid& w) {
  if (w.rows() != w.cols()) throw std::invalid_argument("weight grid must be square");
  return Dft2(w.rows()).forward(w);
}

/// Everything the iteration needs about the weighting of one support block.
struct WeightSet {
  int support = 0;
  double rho_hat = 0.0;
  RealGrid spatial;
  ComplexGrid spectrum;
  RealGrid frequency;

  /// Builds w and W for `mask`, reusing a precomputed w_f (it depends only on S).
  static WeightSet build(const MaskGrid& mask, double rho_hat, const RealGrid& freq, const Dft2& dft) {
    const int s = mask.rows();
    if (freq.rows() != s || dft.size() != s) throw std::invalid_argument("weight inputs disagree on S");
    WeightSet ws;
    ws.support = s;
    ws.rho_hat = rho_hat;
    ws.spatial = spatial_weight(s, rho_hat, mask);
    ws.spectrum = dft.forward(ws.spatial);
    ws.frequency = freq;
    return ws;
  }

  static WeightSet build(const MaskGrid& mask, double rho_hat) {
    const int s = mask.rows();
    return build(mask, rho_hat, frequency_weight(s), Dft2(s));
  }

  double dc() const noexcept { return spectrum(0, 0).real(); }
};

}  // namespace fsr
