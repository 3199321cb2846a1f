#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace tameline {

// Finite union of disjoint closed rational intervals, sorted ascending.
// Degenerate blocks [q,q] stand for isolated points at this stage.
// Successive stages nest: every stage-(n+1) block lies inside a stage-n one.
struct RatApprox {
  std::uint64_t stage = 0;
  std::vector<std::pair<Rat, Rat>> blocks;

  void sort_and_merge();
  bool nested_in(const RatApprox& outer) const;
  Rat total_length() const;
};

inline void RatApprox::sort_and_merge() {
  std::sort(blocks.begin(), blocks.end());
  std::vector<std::pair<Rat, Rat>> out;
  for (auto& b : blocks) {
    if (!out.empty() && b.first <= out.back().second)
      out.back().second = std::max(out.back().second, b.second);
    else
      out.push_back(b);
  }
  blocks = std::move(out);
}

inline bool RatApprox::nested_in(const RatApprox& outer) const {
  for (auto& b : blocks) {
    bool covered = false;
    for (auto& o : outer.blocks)
      if (o.first <= b.first && b.second <= o.second) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

inline Rat RatApprox::total_length() const {
  Rat s = 0;
  for (auto& b : blocks) s += b.second - b.first;
  return s;
}

}  // namespace tameline
