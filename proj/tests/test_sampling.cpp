#include <gtest/gtest.h>

#include "fsr/sampling.hpp"
#include "test_support.hpp"

using namespace fsr;

TEST(SplitMix64, MatchesPublishedReferenceSequence) {
  // First outputs for seed 1234567 from the reference C implementation.
  SplitMix64 rng(1234567);
  EXPECT_EQ(rng.next(), 6457827717110365317ULL);
  EXPECT_EQ(rng.next(), 3203168211198807973ULL);
  EXPECT_EQ(rng.next(), 9817491932198370423ULL);
}

TEST(QuarterSample, OnePixelPerCell) {
  const GrayImage img = fixtures::random_image(1200, 1200, 3);
  const SampledImage s = quarter_sample(img, 42);
  EXPECT_EQ(s.known_count(), 360000u);
  for (int r = 0; r < 1200; r += 2)
    for (int c = 0; c < 1200; c += 2)
      ASSERT_EQ(s.mask(r, c) + s.mask(r, c + 1) + s.mask(r + 1, c) + s.mask(r + 1, c + 1), 1);
}

TEST(QuarterSample, CopiesKnownAndZeroesUnknown) {
  const SampledImage s = quarter_sample(GrayImage(8, 6, 128.0), 9);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 6; ++c) EXPECT_EQ(s.image(r, c), s.mask(r, c) ? 128.0 : 0.0);
}

TEST(QuarterSample, DeterministicPerSeed) {
  const GrayImage img = fixtures::random_image(33, 40, 5);
  EXPECT_EQ(quarter_sample(img, 7).mask, quarter_sample(img, 7).mask);
  EXPECT_NE(quarter_sample(img, 7).mask, quarter_sample(img, 8).mask);
}

TEST(QuarterSample, OddDimensionsSampleOnePixelPerEdgeCell) {
  const SampledImage s = quarter_sample(GrayImage(5, 7, 10.0), 11);
  EXPECT_EQ(s.known_count(), 3u * 4u);
  for (int cr = 0; cr < 5; cr += 2)
    for (int cc = 0; cc < 7; cc += 2) {
      int n = 0;
      for (int r = cr; r < std::min(cr + 2, 5); ++r)
        for (int c = cc; c < std::min(cc + 2, 7); ++c) n += s.mask(r, c);
      EXPECT_EQ(n, 1);
    }
  EXPECT_EQ(quarter_sample(GrayImage(1, 1, 3.0), 0).known_count(), 1u);
}

TEST(QuarterSample, PositionsAreRoughlyUniform) {
  const SampledImage s = quarter_sample(GrayImage(400, 400, 1.0), 1);
  int counts[4] = {};
  for (int r = 0; r < 400; r += 2)
    for (int c = 0; c < 400; c += 2)
      for (int i = 0; i < 4; ++i)
        if (s.mask(r + i / 2, c + i % 2)) ++counts[i];
  for (int n : counts) EXPECT_NEAR(n, 10000, 400);  // 4 sigma
}

TEST(MeanFill, FullySampledIsIdentity) {
  const GrayImage img = fixtures::random_image(6, 5, 1);
  const SampledImage s(img, MaskGrid(6, 5, 1));
  EXPECT_EQ(mean_fill(s), img);
}

TEST(MeanFill, FillsWithSampleMean) {
  GrayImage img(3, 3, 0.0);
  MaskGrid mask(3, 3, 0);
  img(0, 0) = 0.0;
  img(2, 1) = 255.0;
  mask(0, 0) = mask(2, 1) = 1;
  const GrayImage out = mean_fill(SampledImage(img, mask));
  EXPECT_EQ(out(0, 0), 0.0);
  EXPECT_EQ(out(2, 1), 255.0);
  EXPECT_EQ(out(1, 1), 127.5);
}

TEST(MeanFill, CheckerboardOverConstant) {
  MaskGrid mask(6, 6, 0);
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) mask(r, c) = (r + c) % 2;
  const GrayImage out = mean_fill(SampledImage(GrayImage(6, 6, 42.0), mask));
  for (double v : out.values()) EXPECT_EQ(v, 42.0);
}

TEST(MeanFill, IdempotentOnKnownPositions) {
  const SampledImage s = quarter_sample(fixtures::random_image(10, 10, 2), 3);
  const GrayImage once = mean_fill(s);
  const GrayImage twice = mean_fill(SampledImage(once, s.mask));
  EXPECT_EQ(once, twice);
}

TEST(MeanFill, EmptyMaskIsAnError) {
  EXPECT_THROW(mean_fill(SampledImage(GrayImage(2, 2, 1.0), MaskGrid(2, 2, 0))), std::invalid_argument);
}

TEST(SampledImage, RejectsMismatchedMask) {
  EXPECT_THROW(SampledImage(GrayImage(2, 3), MaskGrid(3, 2, 1)), std::invalid_argument);
}

TEST(ExtractSupportBlock, InteriorBlockIsVerbatim) {
  const SampledImage s = quarter_sample(fixtures::random_image(40, 40, 4), 5);
  FsrParams p;
  const auto blocks = block_partition(40, 40, p);
  const BlockDescriptor& d = blocks[2 * 10 + 3];  // target (8, 12), support (2, 6)
  const SampledBlock b = extract_support_block(s, d, p.support());
  for (int m = 0; m < 16; ++m)
    for (int n = 0; n < 16; ++n) {
      EXPECT_EQ(b.mask(m, n), s.mask(2 + m, 6 + n));
      EXPECT_EQ(b.signal(m, n), s.image(2 + m, 6 + n));
    }
}

TEST(ExtractSupportBlock, CornerOutsideImageIsUnknown) {
  const SampledImage s(GrayImage(20, 20, 9.0), MaskGrid(20, 20, 1));
  FsrParams p;
  const SampledBlock b = extract_support_block(s, block_partition(20, 20, p)[0], p.support());
  for (int m = 0; m < 16; ++m)
    for (int n = 0; n < 16; ++n) {
      const bool inside = m >= 6 && n >= 6;
      EXPECT_EQ(b.mask(m, n), inside ? 1 : 0);
      EXPECT_EQ(b.signal(m, n), inside ? 9.0 : 0.0);
    }
}

TEST(ExtractSupportBlock, FullySampledInteriorHasFullMask) {
  const SampledImage s(GrayImage(30, 30, 1.0), MaskGrid(30, 30, 1));
  FsrParams p;
  const auto blocks = block_partition(30, 30, p);
  const SampledBlock b = extract_support_block(s, blocks[2 * 8 + 2], p.support());
  for (auto m : b.mask.values()) EXPECT_EQ(m, 1);
}

TEST(ExtractSupportBlock, NeverReadsOutsideTinyImages) {
  const SampledImage s(GrayImage(1, 1, 5.0), MaskGrid(1, 1, 1));
  FsrParams p;
  p.border = 14;
  const SampledBlock b = extract_support_block(s, block_partition(1, 1, p)[0], p.support());
  EXPECT_EQ(b.size(), 32);
  EXPECT_EQ(b.mask(14, 14), 1);
  std::size_t known = 0;
  for (auto m : b.mask.values()) known += m;
  EXPECT_EQ(known, 1u);
}
