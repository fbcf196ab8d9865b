#pragma once

// Square 2D discrete Fourier transform used by the block reconstruction.
//
// Convention: forward is unnormalized,
//   F[k,l] = sum_{m,n} f[m,n] * exp(-j*2*pi*(k*m + l*n)/S),
// and the inverse carries the 1/S^2 factor. Block sizes are small (S <= 32)
// and arbitrary (not only powers of two), so the transform is evaluated as two
// passes of direct 1D DFTs with an exact twiddle table.

#include <numbers>
#include <stdexcept>
#include <vector>

#include "fsr/core.hpp"

namespace fsr {

class Dft2 {
public:
  explicit Dft2(int size) : size_(size), twiddle_(static_cast<std::size_t>(size)) {
    if (size < 1) throw std::invalid_argument("DFT size must be >= 1");
    for (int j = 0; j < size; ++j) {
      const double angle = 2.0 * std::numbers::pi * j / size;
      twiddle_[j] = {std::cos(angle), -std::sin(angle)};
    }
  }

  int size() const noexcept { return size_; }

  ComplexGrid forward(const ComplexGrid& in) const { return transform(in, false); }

  ComplexGrid forward(const RealGrid& in) const {
    check(in.rows(), in.cols());
    ComplexGrid tmp(size_, size_);
    for (std::size_t i = 0; i < in.size(); ++i) tmp.values()[i] = in.values()[i];
    return transform(tmp, false);
  }

  ComplexGrid inverse(const ComplexGrid& in) const {
    ComplexGrid out = transform(in, true);
    const double scale = 1.0 / (static_cast<double>(size_) * size_);
    for (Complex& v : out.values()) v *= scale;
    return out;
  }

private:
  void check(int rows, int cols) const {
    if (rows != size_ || cols != size_) throw std::invalid_argument("DFT input has wrong dimensions");
  }

  // exp(-+j*2*pi*idx/S) for an arbitrary non-negative product index.
  Complex factor(long idx, bool inverse) const noexcept {
    const Complex t = twiddle_[static_cast<std::size_t>(idx % size_)];
    return inverse ? std::conj(t) : t;
  }

  ComplexGrid transform(const ComplexGrid& in, bool inverse) const {
    check(in.rows(), in.cols());
    const int s = size_;
    ComplexGrid rows_done(s, s);
    for (int m = 0; m < s; ++m) {
      for (int l = 0; l < s; ++l) {
        double re = 0.0, im = 0.0;
        for (int n = 0; n < s; ++n) {
          const Complex a = in(m, n);
          const Complex t = factor(static_cast<long>(l) * n, inverse);
          re += a.real() * t.real() - a.imag() * t.imag();
          im += a.real() * t.imag() + a.imag() * t.real();
        }
        rows_done(m, l) = {re, im};
      }
    }
    ComplexGrid out(s, s);
    for (int k = 0; k < s; ++k) {
      for (int l = 0; l < s; ++l) {
        double re = 0.0, im = 0.0;
        for (int m = 0; m < s; ++m) {
          const Complex a = rows_done(m, l);
          const Complex t = factor(static_cast<long>(k) * m, inverse);
          re += a.real() * t.real() - a.imag() * t.imag();
          im += a.real() * t.imag() + a.imag() * t.real();
        }
        out(k, l) = {re, im};
      }
    }
    return out;
  }

  int size_;
  std::vector<Complex> twiddle_;
};

}  // namespace fsr
