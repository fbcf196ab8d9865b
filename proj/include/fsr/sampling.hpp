#pragma once

// Quarter-sampling emulation, baseline fills and support-block extraction.

#include <cstdint>
#include <stdexcept>

#include "fsr/core.hpp"

namespace fsr {

/// SplitMix64 (Steele, Lea, Flood 2014). Fixed so that sampling masks are
/// bit-identical across platforms and implementations:
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, n) via the high 64 bits of next() * n.
  std::uint32_t below(std::uint32_t n) noexcept {
    return static_cast<std::uint32_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
  }

private:
  std::uint64_t state_;
};

/// Image with known-sample mask. Unknown pixels hold 0.
struct SampledImage {
  GrayImage image;
  MaskGrid mask;

  SampledImage() = default;
  SampledImage(GrayImage img, MaskGrid m) : image(std::move(img)), mask(std::move(m)) {
    if (mask.rows() != image.height() || mask.cols() != image.width())
      throw std::invalid_argument("image and mask dimensions differ");
    for (std::size_t i = 0; i < mask.size(); ++i)
      if (!mask.values()[i]) image.values()[i] = 0.0;
  }

  std::size_t known_count() const noexcept {
    std::size_t n = 0;
    for (auto m : mask.values()) n += m ? 1 : 0;
    return n;
  }
};

/// S x S support-block signal and its membership mask.
struct SampledBlock {
  RealGrid signal;
  MaskGrid mask;

  int size() const noexcept { return signal.rows(); }
};

/// Keeps one uniformly chosen pixel per 2x2 cell. Cells are visited in
/// row-major order and each cell consumes exactly one SplitMix64 draw; the
/// draw picks among the cell's in-image pixels in row-major order. Trailing
/// cells of odd-sized images are 1x2, 2x1 or 1x1.
inline SampledImage quarter_sample(const GrayImage& original, std::uint64_t seed) {
  const int h = original.height();
  const int w = original.width();
  SplitMix64 rng(seed);
  GrayImage out(h, w, 0.0);
  MaskGrid mask(h, w, 0);
  for (int cr = 0; cr < h; cr += 2) {
    const int ch = std::min(2, h - cr);
    for (int cc = 0; cc < w; cc += 2) {
      const int cw = std::min(2, w - cc);
      const auto pick = static_cast<int>(rng.below(static_cast<std::uint32_t>(ch * cw)));
      const int r = cr + pick / cw;
      const int c = cc + pick % cw;
      mask(r, c) = 1;
      out(r, c) = original(r, c);
    }
  }
  return SampledImage(std::move(out), std::move(mask));
}

/// Fills every unknown pixel with the mean of the known samples.
inline GrayImage mean_fill(const SampledImage& sampled) {
  double sum = 0.0;
  std::size_t count = 0;
  const auto px = sampled.image.values();
  const auto mk = sampled.mask.values();
  for (std::size_t i = 0; i < px.size(); ++i) {
    if (mk[i]) {
      sum += px[i];
      ++count;
    }
  }
  if (count == 0) throw std::invalid_argument("no known samples");
  const double mean = sum / static_cast<double>(count);
  GrayImage out = sampled.image;
  auto dst = out.values();
  for (std::size_t i = 0; i < dst.size(); ++i)
    if (!mk[i]) dst[i] = mean;
  return out;
}

/// Copies the S x S support window of `desc`. Out-of-image positions are unknown.
inline SampledBlock extract_support_block(const SampledImage& sampled, const BlockDescriptor& desc, int support) {
  SampledBlock block{RealGrid(support, support, 0.0), MaskGrid(support, support, 0)};
  const int h = sampled.image.height();
  const int w = sampled.image.width();
  for (int m = 0; m < support; ++m) {
    const int r = desc.support_origin.row + m;
    if (r < 0 || r >= h) continue;
    for (int n = 0; n < support; ++n) {
      const int c = desc.support_origin.col + n;
      if (c < 0 || c >= w) continue;
      if (sampled.mask(r, c)) {
        block.mask(m, n) = 1;
        block.signal(m, n) = sampled.image(r, c);
      }
    }
  }
  return block;
}

}  // namespace fsr
