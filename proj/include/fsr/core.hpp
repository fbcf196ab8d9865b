#pragma once

// Shared domain types and block-grid geometry.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fsr {

using Complex = std::complex<double>;

/// Dense row-major 2D grid.
template <class T>
class Grid {
public:
  Grid() = default;
  Grid(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("grid dimensions must be non-negative");
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  T& operator()(int r, int c) noexcept { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const T& operator()(int r, int c) const noexcept {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }

  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }

  std::span<T> row(int r) noexcept { return values().subspan(static_cast<std::size_t>(r) * cols_, cols_); }
  std::span<const T> row(int r) const noexcept {
    return values().subspan(static_cast<std::size_t>(r) * cols_, cols_);
  }

  bool same_shape(const Grid& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using RealGrid = Grid<double>;
using ComplexGrid = Grid<Complex>;
using MaskGrid = Grid<std::uint8_t>;  // 1 = known sample, 0 = unknown

/// Grayscale image on the [0, 255] scale, double precision.
class GrayImage {
public:
  GrayImage() = default;

  GrayImage(int height, int width, double fill = 0.0) : pixels_(check(height, width), width, fill) {}

  explicit GrayImage(RealGrid pixels) : pixels_(std::move(pixels)) {
    check(pixels_.rows(), pixels_.cols());
    for (double v : pixels_.values())
      if (!std::isfinite(v)) throw std::invalid_argument("image pixels must be finite");
  }

  int height() const noexcept { return pixels_.rows(); }
  int width() const noexcept { return pixels_.cols(); }
  std::size_t pixel_count() const noexcept { return pixels_.size(); }

  double& operator()(int r, int c) noexcept { return pixels_(r, c); }
  double operator()(int r, int c) const noexcept { return pixels_(r, c); }

  const RealGrid& grid() const noexcept { return pixels_; }
  std::span<double> values() noexcept { return pixels_.values(); }
  std::span<const double> values() const noexcept { return pixels_.values(); }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
  static int check(int height, int width) {
    if (height < 1 || width < 1) throw std::invalid_argument("image dimensions must be at least 1x1");
    return height;
  }

  RealGrid pixels_;
};

/// Which argmax implementation selects the basis image each iteration.
enum class ArgmaxStrategy { tree, linear };

inline const char* to_string(ArgmaxStrategy s) noexcept {
  return s == ArgmaxStrategy::tree ? "tree" : "linear";
}

/// Reconstruction parameters. Support block size is derived: S = B + 2L.
struct FsrParams {
  int target_block = 4;   // B
  int border = 6;         // L
  double rho_hat = 0.7;   // spatial decay
  double gamma = 0.5;     // orthogonality deficiency compensation
  int iterations = 200;   // I
  int threads = 1;
  std::uint64_t seed = 42;
  ArgmaxStrategy argmax = ArgmaxStrategy::tree;
  // Stop once the best objective falls below 1e-12 * E_w(0).
  bool early_stop = false;

  int support() const noexcept { return target_block + 2 * border; }

  void validate() const {
    if (target_block < 1) throw std::invalid_argument("target block size must be >= 1");
    if (border < 0) throw std::invalid_argument("border must be >= 0");
    const int s = support();
    if (s < 2) throw std::invalid_argument("support block size must be >= 2");
    if (s * s > 1024) throw std::invalid_argument("support block must satisfy S*S <= 1024");
    if (!(rho_hat > 0.0 && rho_hat < 1.0)) throw std::invalid_argument("rho must lie in (0, 1)");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in (0, 1]");
    if (iterations < 0) throw std::invalid_argument("iterations must be >= 0");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  }
};

struct PixelPos {
  int row = 0;
  int col = 0;
  friend bool operator==(const PixelPos&, const PixelPos&) = default;
};

struct BlockDescriptor {
  PixelPos target_origin;
  int target_height = 0;
  int target_width = 0;
  PixelPos support_origin;  // may be negative near the image border
};

/// Splits a Y x X image into ceil(Y/B) * ceil(X/B) target blocks in row-major order.
/// Edge targets are truncated; support origins are always target_origin - (L, L).
inline std::vector<BlockDescriptor> block_partition(int height, int width, const FsrParams& params) {
  params.validate();
  if (height < 1 || width < 1) throw std::invalid_argument("image dimensions must be at least 1x1");
  const int b = params.target_block;
  const int l = params.border;
  const int rows = (height + b - 1) / b;
  const int cols = (width + b - 1) / b;

  std::vector<BlockDescriptor> blocks;
  blocks.reserve(static_cast<std::size_t>(rows) * cols);
  for (int br = 0; br < rows; ++br) {
    for (int bc = 0; bc < cols; ++bc) {
      BlockDescriptor d;
      d.target_origin = {br * b, bc * b};
      d.target_height = std::min(b, height - br * b);
      d.target_width = std::min(b, width - bc * b);
      d.support_origin = {br * b - l, bc * b - l};
      blocks.push_back(d);
    }
  }
  return blocks;
}

}  // namespace fsr
