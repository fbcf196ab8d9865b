#pragma once

// Brute-force spatial-domain FSR used to validate the frequency-domain path.
//
// Every quantity is evaluated by explicit summation over the basis images
// phi_kl[m,n] = exp(+j*2*pi*(k*m + l*n)/S); nothing here goes through the
// DFT helper or the incremental residual update. O(S^4) per iteration.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fsr/core.hpp"
#include "fsr/sampling.hpp"

namespace fsr::oracle {

struct OracleSelection {
  int u = 0;
  int v = 0;
  double objective = 0.0;
};

struct OracleState {
  ComplexGrid model;         // g, spatial domain
  ComplexGrid weighted_res;  // r_w = (f~ - g) * w
  double energy = 0.0;       // E_w = sum |f~ - g|^2 w
};

class SpatialFsr {
public:
  SpatialFsr(const SampledBlock& block, const RealGrid& spatial_weight, const RealGrid& frequency_weight)
      : block_(block), w_(spatial_weight), wf_(frequency_weight), size_(block.size()),
        basis_(static_cast<std::size_t>(size_)) {
    if (w_.rows() != size_ || wf_.rows() != size_) throw std::invalid_argument("oracle inputs disagree on S");
    for (int j = 0; j < size_; ++j) {
      const double a = 2.0 * std::numbers::pi * j / size_;
      basis_[j] = {std::cos(a), std::sin(a)};
    }
    state_.model = ComplexGrid(size_, size_);
    refresh();
  }

  const OracleState& state() const noexcept { return state_; }

  Complex phi(int k, int l, int m, int n) const noexcept {
    return basis_[static_cast<std::size_t>((k * m + l * n) % size_)];
  }

  /// <r_w, phi_kl> = sum r[m,n] w[m,n] conj(phi_kl[m,n]).
  Complex correlation(int k, int l) const {
    Complex acc{};
    for (int m = 0; m < size_; ++m)
      for (int n = 0; n < size_; ++n) acc += state_.weighted_res(m, n) * std::conj(phi(k, l, m, n));
    return acc;
  }

  /// Coefficient minimizing sum |r - p*phi_kl|^2 w, solved directly.
  Complex optimal_coefficient(int k, int l) const {
    double denom = 0.0;
    for (int m = 0; m < size_; ++m)
      for (int n = 0; n < size_; ++n) denom += w_(m, n) * std::norm(phi(k, l, m, n));
    if (!(denom > 0.0)) throw std::domain_error("empty support");
    return correlation(k, l) / denom;
  }

  double objective(int k, int l) const { return wf_(k, l) * std::norm(correlation(k, l)); }

  OracleSelection select() const {
    OracleSelection best{0, 0, -1.0};
    for (int k = 0; k < size_; ++k) {
      for (int l = 0; l < size_; ++l) {
        const double obj = objective(k, l);
        if (obj > best.objective) best = {k, l, obj};
      }
    }
    return best;
  }

  struct Step {
    OracleSelection selection;
    Complex coefficient;
  };

  /// One greedy iteration: select, add gamma * p * phi_uv to g, recompute r_w and E_w.
  Step step(double gamma) { return step_at(select(), gamma); }

  /// Same update with the basis index chosen by the caller, e.g. another maximizer of a tie.
  Step step_at(const OracleSelection& sel, double gamma) {
    if (sel.u < 0 || sel.u >= size_ || sel.v < 0 || sel.v >= size_) throw std::out_of_range("basis index");
    const Complex p = optimal_coefficient(sel.u, sel.v);
    for (int m = 0; m < size_; ++m)
      for (int n = 0; n < size_; ++n) state_.model(m, n) += gamma * p * phi(sel.u, sel.v, m, n);
    refresh();
    return {sel, p};
  }

  /// Known samples merged with the real part of g.
  RealGrid merged() const {
    RealGrid out(size_, size_);
    for (int m = 0; m < size_; ++m)
      for (int n = 0; n < size_; ++n)
        out(m, n) = block_.mask(m, n) ? block_.signal(m, n) : state_.model(m, n).real();
    return out;
  }

private:
  void refresh() {
    state_.weighted_res = ComplexGrid(size_, size_);
    state_.energy = 0.0;
    for (int m = 0; m < size_; ++m) {
      for (int n = 0; n < size_; ++n) {
        const Complex r = block_.signal(m, n) - state_.model(m, n);
        state_.weighted_res(m, n) = r * w_(m, n);
        state_.energy += std::norm(r) * w_(m, n);
      }
    }
  }

  SampledBlock block_;
  RealGrid w_;
  RealGrid wf_;
  int size_;
  std::vector<Complex> basis_;
  OracleState state_;
};

inline SpatialFsr::Step oracle_step(SpatialFsr& fsr, double gamma) { return fsr.step(gamma); }

/// Runs `params.iterations` oracle steps and merges with the known samples.
inline RealGrid oracle_reconstruct(const SampledBlock& block, const RealGrid& spatial_weight,
                                   const RealGrid& frequency_weight, const FsrParams& params) {
  SpatialFsr fsr(block, spatial_weight, frequency_weight);
  for (int it = 0; it < params.iterations; ++it) fsr.step(params.gamma);
  return fsr.merged();
}

}  // namespace fsr::oracle
