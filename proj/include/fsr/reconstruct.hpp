#pragma once

// Frequency-domain FSR iteration for one support block, and the blockwise
// full-image pipeline on top of it.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "fsr/core.hpp"
#include "fsr/dft.hpp"
#include "fsr/reduce.hpp"
#include "fsr/sampling.hpp"
#include "fsr/weights.hpp"

namespace fsr {

/// Model spectrum G, weighted residual spectrum R_w and iteration counter.
/// The basis coefficients are c_kl = G[k,l] / S^2.
struct BlockState {
  ComplexGrid model;
  ComplexGrid residual;
  int iteration = 0;
};

struct Selection {
  int u = 0;
  int v = 0;
  double objective = 0.0;  // w_f[u,v] * |R_w[u,v]|^2
};

inline BlockState init_residual(const SampledBlock& block, const WeightSet& weights, const Dft2& dft) {
  const int s = weights.support;
  if (block.size() != s || dft.size() != s) throw std::invalid_argument("block does not match support size");
  RealGrid weighted(s, s);
  for (std::size_t i = 0; i < weighted.size(); ++i)
    weighted.values()[i] = block.signal.values()[i] * weights.spatial.values()[i];
  return BlockState{ComplexGrid(s, s), dft.forward(weighted), 0};
}

inline BlockState init_residual(const SampledBlock& block, const WeightSet& weights) {
  return init_residual(block, weights, Dft2(weights.support));
}

/// Per-frequency objectives in row-major frequency order.
inline void fill_objectives(const BlockState& state, const WeightSet& weights, std::span<LaneRecord> out) {
  const int s = weights.support;
  const auto res = state.residual.values();
  const auto wf = weights.frequency.values();
  for (int k = 0; k < s; ++k) {
    for (int l = 0; l < s; ++l) {
      const std::size_t i = static_cast<std::size_t>(k) * s + l;
      const double re = res[i].real();
      const double im = res[i].imag();
      out[i] = {wf[i] * (re * re + im * im), k, l};
    }
  }
}

/// Reusable argmax front end; holds scratch space so the iteration loop does not allocate.
class BasisSelector {
public:
  explicit BasisSelector(ArgmaxStrategy strategy = ArgmaxStrategy::tree, int lane_width = kWarpWidth)
      : strategy_(strategy), tree_(lane_width) {}

  ArgmaxStrategy strategy() const noexcept { return strategy_; }

  Selection operator()(const BlockState& state, const WeightSet& weights) {
    records_.resize(weights.frequency.size());
    fill_objectives(state, weights, records_);
    const LaneRecord best = strategy_ == ArgmaxStrategy::tree ? tree_.reduce_in_place(records_) : linear_argmax(records_);
    return {best.index_k, best.index_l, best.objective};
  }

private:
  ArgmaxStrategy strategy_;
  BlockArgmax tree_;
  std::vector<LaneRecord> records_;
};

inline Selection select_basis(const BlockState& state, const WeightSet& weights,
                              ArgmaxStrategy strategy = ArgmaxStrategy::tree) {
  BasisSelector selector(strategy);
  return selector(state, weights);
}

/// p = R_w[u,v] / W[0,0]. Throws when the support block has no known sample.
inline Complex projection_coefficient(const BlockState& state, const WeightSet& weights, const Selection& sel) {
  const double dc = weights.dc();
  if (!(dc > 0.0)) throw std::domain_error("empty support");
  return state.residual(sel.u, sel.v) / dc;
}

inline void update_model(BlockState& state, const Selection& sel, Complex p, double gamma) {
  const double s = state.model.rows();
  state.model(sel.u, sel.v) += gamma * p * (s * s);
}

/// R_w[k,l] -= gamma * p * W[(k-u) mod S, (l-v) mod S] for every (k,l).
inline void update_residual(BlockState& state, const Selection& sel, Complex p, double gamma,
                            const WeightSet& weights) {
  const int s = weights.support;
  const double cr = gamma * p.real();
  const double ci = gamma * p.imag();
  for (int k = 0; k < s; ++k) {
    const int i = k - sel.u >= 0 ? k - sel.u : s + k - sel.u;
    Complex* r = state.residual.row(k).data();
    const Complex* w = weights.spectrum.row(i).data();
    // l >= v maps to j = l - v; l < v wraps to j = S + l - v.
    const Complex* w_hi = w - sel.v;
    const Complex* w_lo = w + s - sel.v;
    for (int l = 0; l < s; ++l) {
      const Complex wv = l >= sel.v ? w_hi[l] : w_lo[l];
      const double wr = wv.real();
      const double wi = wv.imag();
      r[l] = {r[l].real() - (cr * wr - ci * wi), r[l].imag() - (cr * wi + ci * wr)};
    }
  }
  ++state.iteration;
}

/// Weighted residual energy sum |f~ - g|^2 w, evaluated in the spatial domain.
inline double weighted_energy(const SampledBlock& block, const ComplexGrid& spatial_model, const WeightSet& weights) {
  double e = 0.0;
  for (std::size_t i = 0; i < block.signal.size(); ++i) {
    const Complex r = block.signal.values()[i] - spatial_model.values()[i];
    e += std::norm(r) * weights.spatial.values()[i];
  }
  return e;
}

/// Keeps known samples, takes the real part of the model elsewhere.
inline RealGrid merge_known(const SampledBlock& block, const ComplexGrid& spatial_model) {
  RealGrid out(block.size(), block.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out.values()[i] = block.mask.values()[i] ? block.signal.values()[i] : spatial_model.values()[i].real();
  return out;
}

struct BlockReconstruction {
  RealGrid merged;        // f^: known samples plus model elsewhere
  ComplexGrid spatial;    // g, before real-part extraction
  int iterations_run = 0;
  bool empty_support = false;
};

struct NoObserver {
  void operator()(const BlockState&, const Selection&, Complex) const noexcept {}
};

/// Per-worker reconstruction context. Shares the DFT tables and w_f across blocks.
class BlockReconstructor {
public:
  BlockReconstructor(const FsrParams& params)
      : params_((params.validate(), params)),
        dft_(params.support()),
        frequency_(frequency_weight(params.support())),
        selector_(params.argmax) {}

  const FsrParams& params() const noexcept { return params_; }
  const Dft2& dft() const noexcept { return dft_; }

  WeightSet weights_for(const MaskGrid& mask) const {
    return WeightSet::build(mask, params_.rho_hat, frequency_, dft_);
  }

  /// `observer(state, selection, p)` runs after every completed iteration.
  template <class Observer = NoObserver>
  BlockReconstruction run(const SampledBlock& block, const WeightSet& weights, Observer&& observer = {}) {
    const int s = params_.support();
    if (block.size() != s || weights.support != s) throw std::invalid_argument("block does not match support size");

    BlockReconstruction out;
    if (!(weights.dc() > 0.0)) {
      out.empty_support = true;
      out.spatial = ComplexGrid(s, s);
      out.merged = RealGrid(s, s, 0.0);
      return out;
    }

    BlockState state = init_residual(block, weights, dft_);
    double stop_below = -1.0;
    if (params_.early_stop) stop_below = 1e-12 * weighted_energy(block, ComplexGrid(s, s), weights);

    for (int it = 0; it < params_.iterations; ++it) {
      const Selection sel = selector_(state, weights);
      if (sel.objective <= stop_below) break;
      const Complex p = projection_coefficient(state, weights, sel);
      update_model(state, sel, p, params_.gamma);
      update_residual(state, sel, p, params_.gamma, weights);
      observer(static_cast<const BlockState&>(state), sel, p);
    }
    out.iterations_run = state.iteration;
    out.spatial = dft_.inverse(state.model);
    out.merged = merge_known(block, out.spatial);
    return out;
  }

private:
  FsrParams params_;
  Dft2 dft_;
  RealGrid frequency_;
  BasisSelector selector_;
};

template <class Observer = NoObserver>
BlockReconstruction reconstruct_block(const SampledBlock& block, const WeightSet& weights, const FsrParams& params,
                                      Observer&& observer = {}) {
  BlockReconstructor worker(params);
  return worker.run(block, weights, std::forward<Observer>(observer));
}

inline BlockReconstruction reconstruct_block(const SampledBlock& block, const FsrParams& params) {
  BlockReconstructor worker(params);
  return worker.run(block, worker.weights_for(block.mask));
}

namespace detail {

inline void copy_target(const BlockDescriptor& d, const RealGrid& block, int border, GrayImage& out) {
  for (int r = 0; r < d.target_height; ++r)
    for (int c = 0; c < d.target_width; ++c)
      out(d.target_origin.row + r, d.target_origin.col + c) = block(border + r, border + c);
}

inline void fill_target(const BlockDescriptor& d, double value, GrayImage& out) {
  for (int r = 0; r < d.target_height; ++r)
    for (int c = 0; c < d.target_width; ++c) out(d.target_origin.row + r, d.target_origin.col + c) = value;
}

}  // namespace detail

/// Reconstructs every target block independently on `params.threads` workers.
/// Blocks without any known sample in their support window receive the
/// global sample mean (0 if the image has no samples at all). The result is
/// independent of the thread count and of the block processing order.
inline GrayImage reconstruct_image(const SampledImage& sampled, const FsrParams& params) {
  params.validate();
  const GrayImage& img = sampled.image;
  const std::vector<BlockDescriptor> blocks = block_partition(img.height(), img.width(), params);

  double fallback = 0.0;
  if (const std::size_t known = sampled.known_count(); known > 0) {
    double sum = 0.0;
    for (std::size_t i = 0; i < sampled.mask.size(); ++i)
      if (sampled.mask.values()[i]) sum += img.values()[i];
    fallback = sum / static_cast<double>(known);
  }

  GrayImage out(img.height(), img.width(), 0.0);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    try {
      BlockReconstructor worker(params);
      for (std::size_t i = next.fetch_add(1, std::memory_order_relaxed); i < blocks.size();
           i = next.fetch_add(1, std::memory_order_relaxed)) {
        const BlockDescriptor& d = blocks[i];
        const SampledBlock block = extract_support_block(sampled, d, params.support());
        const BlockReconstruction rec = worker.run(block, worker.weights_for(block.mask));
        if (rec.empty_support)
          detail::fill_target(d, fallback, out);
        else
          detail::copy_target(d, rec.merged, params.border, out);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(blocks.size());
    }
  };

  const auto workers = static_cast<std::size_t>(std::min<std::size_t>(params.threads, blocks.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace fsr
