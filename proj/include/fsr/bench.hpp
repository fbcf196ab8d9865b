#pragma once

// Parameter sweeps and timing runs for the bench command.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsr/core.hpp"
#include "fsr/metrics.hpp"
#include "fsr/reconstruct.hpp"
#include "fsr/sampling.hpp"

namespace fsr::bench {

struct SweepGrid {
  int target_block = 4;
  std::vector<int> iterations;
  std::vector<int> supports;
  std::vector<double> rhos;
  std::vector<double> gammas;
  std::vector<int> threads{1};
  std::vector<ArgmaxStrategy> argmax{ArgmaxStrategy::tree};
};

struct SweepPoint {
  FsrParams params;
};

/// I in {100..400 step 100}, S in {8..32 step 8}, rho in {0.68..0.82 step 0.02},
/// gamma in {0.2..0.6 step 0.1}, B = 4: 4 * 4 * 8 * 5 = 640 points.
inline SweepGrid full_sweep_grid() {
  SweepGrid g;
  for (int i = 100; i <= 400; i += 100) g.iterations.push_back(i);
  for (int s = 8; s <= 32; s += 8) g.supports.push_back(s);
  for (int r = 68; r <= 82; r += 2) g.rhos.push_back(r / 100.0);
  for (int c = 2; c <= 6; ++c) g.gammas.push_back(c / 10.0);
  return g;
}

/// Cartesian product in the order S, I, rho, gamma, threads, argmax (last varies fastest).
inline std::vector<SweepPoint> enumerate(const SweepGrid& grid) {
  std::vector<SweepPoint> points;
  for (int s : grid.supports) {
    if (s < grid.target_block || (s - grid.target_block) % 2 != 0)
      throw std::invalid_argument("support size " + std::to_string(s) + " is not B + 2L for B = " +
                                  std::to_string(grid.target_block));
    for (int it : grid.iterations)
      for (double rho : grid.rhos)
        for (double gamma : grid.gammas)
          for (int t : grid.threads)
            for (ArgmaxStrategy a : grid.argmax) {
              FsrParams p;
              p.target_block = grid.target_block;
              p.border = (s - grid.target_block) / 2;
              p.iterations = it;
              p.rho_hat = rho;
              p.gamma = gamma;
              p.threads = t;
              p.argmax = a;
              p.validate();
              points.push_back({p});
            }
  }
  return points;
}

/// Smooth deterministic test pattern on [0, 255]: gradients, sinusoids and one dark disk.
inline GrayImage test_pattern(int height, int width, std::uint64_t seed = 1) {
  SplitMix64 rng(seed);
  const double phase = (rng.next() >> 11) * 0x1.0p-53 * 2.0 * std::numbers::pi;
  GrayImage img(height, width);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const double y = static_cast<double>(r) / height;
      const double x = static_cast<double>(c) / width;
      double v = 96.0 + 60.0 * x + 30.0 * y;
      v += 35.0 * std::sin(2.0 * std::numbers::pi * (3.0 * x + 2.0 * y) + phase);
      v += 20.0 * std::cos(2.0 * std::numbers::pi * 7.0 * x * y);
      if ((x - 0.5) * (x - 0.5) + (y - 0.4) * (y - 0.4) < 0.04) v -= 60.0;
      img(r, c) = std::clamp(v, 0.0, 255.0);
    }
  }
  return img;
}

struct BenchRow {
  FsrParams params;
  double elapsed_s = 0.0;     // mean median-time per image
  double blocks_per_s = 0.0;
  double fps = 0.0;
  double psnr_db = 0.0;       // mean of per-image dB values
};

struct BenchInput {
  std::string name;
  GrayImage original;
  SampledImage sampled;
};

inline BenchRow run_point(const FsrParams& params, const std::vector<BenchInput>& inputs, int repeats) {
  if (inputs.empty()) throw std::invalid_argument("no bench inputs");
  BenchRow row;
  row.params = params;
  double total_s = 0.0;
  double psnr_sum = 0.0;
  std::size_t blocks = 0;
  for (const BenchInput& in : inputs) {
    GrayImage rec;
    const double t = median_seconds(repeats, [&] { rec = reconstruct_image(in.sampled, params); });
    total_s += t;
    blocks += block_partition(in.original.height(), in.original.width(), params).size();
    psnr_sum += psnr(in.original, rec).psnr_db;
  }
  row.elapsed_s = total_s / static_cast<double>(inputs.size());
  row.blocks_per_s = total_s > 0.0 ? static_cast<double>(blocks) / total_s : 0.0;
  row.fps = frames_per_second(inputs.size(), total_s);
  row.psnr_db = psnr_sum / static_cast<double>(inputs.size());
  return row;
}

inline constexpr const char* kCsvHeader = "S,B,I,rho,gamma,threads,argmax,elapsed_s,blocks_per_s,fps,psnr_db";

inline void write_csv_row(std::ostream& out, const BenchRow& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%d,%d,%d,%.2f,%.2f,%d,%s,%.6f,%.3f,%.4f,%s", r.params.support(),
                r.params.target_block, r.params.iterations, r.params.rho_hat, r.params.gamma, r.params.threads,
                to_string(r.params.argmax), r.elapsed_s, r.blocks_per_s, r.fps, format_psnr(r.psnr_db).c_str());
  out << buf << '\n';
}

}  // namespace fsr::bench
