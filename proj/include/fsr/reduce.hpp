#pragma once

// Argmax over per-frequency objectives.
//
// The tree variant simulates a group of lockstep lanes that can read each
// other's registers: in every step lane i looks at lane i + offset and takes
// over that lane's record when its objective is strictly larger. The offset
// starts at width/2 and halves down to 1, after which lane 0 holds the
// result. Reads past the active lanes return the reading lane's own record.
// Larger inputs use two phases: consecutive groups reduce independently, then
// a single group reduces the per-group winners.
//
// Only comparisons and copies are performed, so the returned objective is
// bitwise equal to the true maximum.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace fsr {

struct LaneRecord {
  double objective = 0.0;
  std::int32_t index_k = 0;
  std::int32_t index_l = 0;

  friend bool operator==(const LaneRecord&, const LaneRecord&) = default;
};

inline constexpr int kWarpWidth = 32;

namespace detail {

/// Lockstep steps over lanes [0, active) of a `width`-lane group stored at `lanes`.
/// Lanes at or above the current offset are never read again on the way to
/// lane 0, so their updates are skipped. Live lanes only read lanes at or above
/// the offset, which lets each step run in place.
inline LaneRecord tree_reduce(LaneRecord* lanes, int width, int active) noexcept {
  for (int offset = width / 2; offset >= 1; offset /= 2) {
    // Lanes [0, active - offset) have a partner; the rest would read their own record.
    const int paired = std::min(active - offset, offset);
    for (int i = 0; i < paired; ++i) {
      const LaneRecord& a = lanes[i];
      const LaneRecord& b = lanes[i + offset];
      const bool take = b.objective > a.objective;
      lanes[i] = {take ? b.objective : a.objective, take ? b.index_k : a.index_k, take ? b.index_l : a.index_l};
    }
  }
  return lanes[0];
}

}  // namespace detail

/// Fixed-width lane group. Width must be a power of two.
class LaneGroup {
public:
  explicit LaneGroup(int width = kWarpWidth) : lanes_(check_width(width)) {}

  int width() const noexcept { return static_cast<int>(lanes_.size()); }
  std::span<LaneRecord> lanes() noexcept { return lanes_; }
  std::span<const LaneRecord> lanes() const noexcept { return lanes_; }

  /// Runs the lockstep reduction over lanes [0, active) and returns lane 0.
  /// Register contents are consumed.
  LaneRecord reduce(int active) {
    if (active < 1) throw std::invalid_argument("empty reduction");
    if (active > width()) throw std::invalid_argument("active lane count exceeds group width");
    return detail::tree_reduce(lanes_.data(), width(), active);
  }

private:
  static std::size_t check_width(int width) {
    if (width < 1 || !std::has_single_bit(static_cast<unsigned>(width)))
      throw std::invalid_argument("lane group width must be a power of two");
    return static_cast<std::size_t>(width);
  }

  std::vector<LaneRecord> lanes_;
};

/// Loads `records` into a group of `width` lanes and reduces them.
inline LaneRecord lane_group_argmax(std::span<const LaneRecord> records, int width = kWarpWidth) {
  LaneGroup group(width);
  if (records.empty()) throw std::invalid_argument("empty reduction");
  if (records.size() > static_cast<std::size_t>(group.width()))
    throw std::invalid_argument("more records than lanes");
  std::copy(records.begin(), records.end(), group.lanes().begin());
  return group.reduce(static_cast<int>(records.size()));
}

/// Two-phase reduction of up to width^2 records.
class BlockArgmax {
public:
  explicit BlockArgmax(int width = kWarpWidth) : group_(width) {}

  int width() const noexcept { return group_.width(); }
  /// Phase-1 group count of the most recent call (= active lanes in phase 2).
  int last_group_count() const noexcept { return last_groups_; }

  LaneRecord operator()(std::span<const LaneRecord> records) {
    scratch_.assign(records.begin(), records.end());
    return reduce_in_place(scratch_);
  }

  /// Same reduction using `records` itself as the phase-1 registers; contents are consumed.
  LaneRecord reduce_in_place(std::span<LaneRecord> records) {
    const int w = group_.width();
    const std::size_t uw = static_cast<std::size_t>(w);
    if (records.empty()) throw std::invalid_argument("empty reduction");
    if (records.size() > uw * uw) throw std::invalid_argument("record count exceeds width^2");

    std::size_t groups = 0;
    for (std::size_t start = 0; start < records.size(); start += uw, ++groups) {
      const int n = static_cast<int>(std::min(uw, records.size() - start));
      group_.lanes()[groups] = detail::tree_reduce(records.data() + start, w, n);
    }
    last_groups_ = static_cast<int>(groups);
    return group_.reduce(static_cast<int>(groups));
  }

private:
  LaneGroup group_;  // phase-2 registers
  std::vector<LaneRecord> scratch_;
  int last_groups_ = 0;
};

inline LaneRecord block_argmax(std::span<const LaneRecord> records, int width = kWarpWidth) {
  return BlockArgmax(width)(records);
}

/// First record attaining the maximum objective, in array order.
inline LaneRecord linear_argmax(std::span<const LaneRecord> records) {
  if (records.empty()) throw std::invalid_argument("empty reduction");
  const LaneRecord* best = &records[0];
  for (const LaneRecord& r : records.subspan(1))
    if (r.objective > best->objective) best = &r;
  return *best;
}

}  // namespace fsr
