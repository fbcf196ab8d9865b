#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fsr/dft.hpp"
#include "fsr/weights.hpp"
#include "test_support.hpp"

using namespace fsr;

namespace {

MaskGrid random_mask(int s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MaskGrid m(s, s);
  for (auto& v : m.values()) v = rng() % 3 == 0;
  return m;
}

// Textbook O(S^4) DFT, independent of Dft2.
ComplexGrid naive_dft(const ComplexGrid& f, bool inverse) {
  const int s = f.rows();
  const double sign = inverse ? 1.0 : -1.0;
  ComplexGrid out(s, s);
  for (int k = 0; k < s; ++k)
    for (int l = 0; l < s; ++l) {
      Complex acc{};
      for (int m = 0; m < s; ++m)
        for (int n = 0; n < s; ++n)
          acc += f(m, n) * std::polar(1.0, sign * 2.0 * M_PI * ((k * m + l * n) % s) / s);
      out(k, l) = inverse ? acc / static_cast<double>(s * s) : acc;
    }
  return out;
}

}  // namespace

TEST(Dft2, MatchesNaiveTransformForArbitrarySizes) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-100, 100);
  for (int s : {1, 2, 3, 5, 8, 12, 16, 24}) {
    ComplexGrid f(s, s);
    for (auto& v : f.values()) v = {d(rng), d(rng)};
    const Dft2 dft(s);
    const ComplexGrid fw = dft.forward(f), ref = naive_dft(f, false);
    const ComplexGrid iv = dft.inverse(f), iref = naive_dft(f, true);
    for (std::size_t i = 0; i < f.size(); ++i) {
      EXPECT_LT(std::abs(fw.values()[i] - ref.values()[i]), 1e-9) << "S=" << s;
      EXPECT_LT(std::abs(iv.values()[i] - iref.values()[i]), 1e-11) << "S=" << s;
    }
    const ComplexGrid back = dft.inverse(fw);
    for (std::size_t i = 0; i < f.size(); ++i) EXPECT_LT(std::abs(back.values()[i] - f.values()[i]), 1e-10);
  }
}

TEST(SpatialWeight, CenterOfOddBlockIsOne) {
  const RealGrid w = spatial_weight(15, 0.7, MaskGrid(15, 15, 1));
  EXPECT_EQ(w(7, 7), 1.0);
}

TEST(SpatialWeight, CornerOfDefaultBlock) {
  MaskGrid mask(16, 16, 0);
  mask(0, 0) = 1;
  const RealGrid w = spatial_weight(16, 0.7, mask);
  EXPECT_DOUBLE_EQ(w(0, 0), std::pow(0.7, 7.5 * std::sqrt(2.0)));
  EXPECT_EQ(w(15, 15), 0.0);
}

TEST(SpatialWeight, EmptyMaskGivesZero) {
  const RealGrid w = spatial_weight(8, 0.7, MaskGrid(8, 8, 0));
  for (double v : w.values()) EXPECT_EQ(v, 0.0);
}

TEST(SpatialWeight, RangeAndMonotoneInDistance) {
  const int s = 16;
  const MaskGrid mask = random_mask(s, 3);
  const RealGrid w = spatial_weight(s, 0.74, mask);
  const double c = (s - 1) / 2.0;
  for (int m1 = 0; m1 < s; ++m1)
    for (int n1 = 0; n1 < s; ++n1) {
      if (!mask(m1, n1)) {
        EXPECT_EQ(w(m1, n1), 0.0);
        continue;
      }
      EXPECT_GT(w(m1, n1), 0.0);
      EXPECT_LE(w(m1, n1), 1.0);
      const double d1 = std::hypot(m1 - c, n1 - c);
      for (int m2 = 0; m2 < s; ++m2)
        for (int n2 = 0; n2 < s; ++n2)
          if (mask(m2, n2) && std::hypot(m2 - c, n2 - c) > d1) { EXPECT_LE(w(m2, n2), w(m1, n1)); }
    }
}

TEST(SpatialWeight, RejectsBadRho) {
  EXPECT_THROW(spatial_weight(4, 1.0, MaskGrid(4, 4, 1)), std::invalid_argument);
}

TEST(FrequencyWeight, DcAndNyquistCorner) {
  for (int s : {4, 8, 16, 24, 32}) {
    const RealGrid wf = frequency_weight(s);
    EXPECT_NEAR(wf(0, 0), 1.0, 1e-12);
    EXPECT_NEAR(wf(s / 2, s / 2), 0.0, 1e-12);
  }
}

TEST(FrequencyWeight, FoldingSymmetryRangeAndMaximum) {
  for (int s : {5, 8, 16}) {
    const RealGrid wf = frequency_weight(s);
    for (int k = 0; k < s; ++k)
      for (int l = 0; l < s; ++l) {
        EXPECT_GE(wf(k, l), 0.0);
        EXPECT_LE(wf(k, l), 1.0);
        if (k > 0) { EXPECT_DOUBLE_EQ(wf(k, l), wf(s - k, l)); }
        if (l > 0) { EXPECT_DOUBLE_EQ(wf(k, l), wf(k, s - l)); }
        if (k != 0 || l != 0) { EXPECT_LT(wf(k, l), wf(0, 0)); }
      }
  }
}

TEST(WeightSpectrum, ConstantAndZeroWeights) {
  const ComplexGrid ones = weight_spectrum(RealGrid(8, 8, 1.0));
  EXPECT_NEAR(ones(0, 0).real(), 64.0, 1e-12);
  EXPECT_EQ(ones(0, 0).imag(), 0.0);
  for (int k = 0; k < 8; ++k)
    for (int l = 0; l < 8; ++l)
      if (k || l) { EXPECT_LT(std::abs(ones(k, l)), 1e-12); }
  const ComplexGrid zeros = weight_spectrum(RealGrid(8, 8, 0.0));
  for (const Complex& v : zeros.values()) EXPECT_EQ(v, Complex{});
}

TEST(WeightSpectrum, DcEqualsSumAndSpectrumIsConjugateSymmetric) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int s = 16;
    const RealGrid w = spatial_weight(s, 0.7, random_mask(s, seed));
    const ComplexGrid W = weight_spectrum(w);
    double sum = 0.0;
    for (double v : w.values()) sum += v;
    EXPECT_NEAR(W(0, 0).real(), sum, 1e-10 * sum);
    EXPECT_EQ(W(0, 0).imag(), 0.0);
    for (int k = 0; k < s; ++k)
      for (int l = 0; l < s; ++l)
        EXPECT_LT(std::abs(W(k, l) - std::conj(W((s - k) % s, (s - l) % s))), 1e-12 * sum);
  }
}

TEST(WeightSet, BuildsAllThreeGrids) {
  const SampledBlock b = fixtures::random_block(8, 2);
  const WeightSet ws = WeightSet::build(b.mask, 0.7);
  EXPECT_EQ(ws.support, 8);
  EXPECT_EQ(ws.spatial, spatial_weight(8, 0.7, b.mask));
  EXPECT_EQ(ws.frequency, frequency_weight(8));
  EXPECT_GT(ws.dc(), 0.0);
}
