#include <gtest/gtest.h>

#include <cmath>
#include <thread>

#include "fsr/metrics.hpp"
#include "test_support.hpp"

using namespace fsr;

TEST(Psnr, IdenticalImages) {
  const GrayImage img = fixtures::random_image(9, 7, 1);
  const QualityReport q = psnr(img, img);
  EXPECT_TRUE(q.identical());
  EXPECT_EQ(q.mse, 0.0);
  EXPECT_TRUE(std::isinf(q.psnr_db));
  EXPECT_EQ(q.pixel_count, 63u);
  EXPECT_EQ(format_psnr(q.psnr_db), "inf");
}

TEST(Psnr, BlackVersusWhite) {
  const QualityReport q = psnr(GrayImage(4, 4, 0.0), GrayImage(4, 4, 255.0));
  EXPECT_EQ(q.mse, 255.0 * 255.0);
  EXPECT_EQ(q.psnr_db, 0.0);
}

TEST(Psnr, OffsetByOne) {
  const QualityReport q = psnr(GrayImage(5, 5, 100.0), GrayImage(5, 5, 101.0));
  EXPECT_EQ(q.mse, 1.0);
  EXPECT_NEAR(q.psnr_db, 10.0 * std::log10(65025.0), 1e-12);
  EXPECT_NEAR(q.psnr_db, 48.13, 0.005);
}

TEST(Psnr, ClampsTestImageAndIsSymmetricInRange) {
  GrayImage over(2, 2, 300.0);
  EXPECT_TRUE(psnr(GrayImage(2, 2, 255.0), over).identical());
  const GrayImage a = fixtures::random_image(16, 16, 1), b = fixtures::random_image(16, 16, 2);
  EXPECT_EQ(psnr(a, b).mse, psnr(b, a).mse);
}

TEST(Psnr, DimensionMismatch) {
  EXPECT_THROW(psnr(GrayImage(2, 3), GrayImage(3, 2)), std::invalid_argument);
}

TEST(TimeBlock, ReturnsResultAndNonNegativeTime) {
  const auto noop = time_block("noop", [] {});
  EXPECT_GE(noop.seconds, 0.0);
  const auto v = time_block("value", [] { return 41 + 1; });
  EXPECT_EQ(v.result, 42);
  const auto slept = time_block("sleep", [] { std::this_thread::sleep_for(std::chrono::milliseconds(5)); });
  EXPECT_GE(slept.seconds, 0.004);
}

TEST(TimeBlock, MedianOfRepeats) {
  EXPECT_EQ(median({3.0, 1.0, 2.0, 5.0, 4.0}), 3.0);
  EXPECT_EQ(median({1.0, 2.0}), 1.5);
  int calls = 0;
  EXPECT_GE(median_seconds(5, [&] { ++calls; }), 0.0);
  EXPECT_EQ(calls, 5);
  EXPECT_DOUBLE_EQ(frames_per_second(30, 2.0), 15.0);
}
