#pragma once

// Relative heights of the parts of a k = 1 CMPP partition.
//
// Rounds h = 0, 1, ..., l-1 sweep the not yet assigned parts in magnitude
// order. A part is assigned height h when exactly h of the cells straight
// above it (same magnitude, rows r+2, r+4, ...) lie strictly above both of
// its legs, the legs being the diagonal boundaries of the path region spanned
// by the previous and next unassigned parts. Assigning height h folds the
// diagram: every unassigned virtual magnitude at least m+h+1 drops by
// 2(h+1), concealing the assigned part.

#include <cstddef>
#include <span>
#include <vector>

#include "cmpp/diagram.hpp"
#include "cmpp/errors.hpp"
#include "cmpp/qseries.hpp"

namespace cmpp {

struct FoldEvent {
  int round = 0;                 // the height assigned
  std::size_t part_index = 0;    // index into the partition's parts
  int virtual_magnitude = 0;     // magnitude of the part at assignment time
  int shift = 0;                 // 2(h+1), subtracted from the later parts
  friend bool operator==(const FoldEvent&, const FoldEvent&) = default;
};

using FoldTrace = std::vector<FoldEvent>;

struct HeightAssignment {
  std::vector<int> relative;  // parallel to CmppPartition::parts()
  friend bool operator==(const HeightAssignment&, const HeightAssignment&) = default;
};

namespace detail {

// Cells of (r, m) in rows r+2, r+4, ... lying strictly above both legs. A leg
// only constrains the rows below its own cell.
inline int cells_above_legs(int rows, CellAddress c, const CellAddress* pred, const CellAddress* succ) {
  int count = 0;
  for (int r = c.row + 2; r <= rows; r += 2) {
    if (pred && r > pred->row && c.magnitude <= pred->magnitude + (r - pred->row)) continue;
    if (succ && r > succ->row && c.magnitude >= succ->magnitude - (r - succ->row)) continue;
    ++count;
  }
  return count;
}

// cells sorted by cell_order with distinct magnitudes; init is the cell of
// the single initial condition.
inline std::vector<int> compute_heights(int ell, CellAddress init, std::span<const CellAddress> cells,
                                        FoldTrace* trace = nullptr) {
  const std::size_t n = cells.size();
  std::vector<CellAddress> virt(cells.begin(), cells.end());
  std::vector<int> height(n, -1);
  std::vector<std::size_t> work(n);
  for (std::size_t t = 0; t < n; ++t) work[t] = t;

  for (int h = 0; h < ell && !work.empty(); ++h) {
    std::size_t pos = 0;
    while (pos < work.size()) {
      const std::size_t p = work[pos];
      const CellAddress* pred = pos > 0 ? &virt[work[pos - 1]] : &init;
      const CellAddress* succ = pos + 1 < work.size() ? &virt[work[pos + 1]] : nullptr;
      if (cells_above_legs(2 * ell, virt[p], pred, succ) != h) {
        ++pos;
        continue;
      }
      height[p] = h;
      const int m = virt[p].magnitude;
      if (trace) trace->push_back({h, p, m, 2 * (h + 1)});
      work.erase(work.begin() + static_cast<std::ptrdiff_t>(pos));
      for (std::size_t q : work)
        if (virt[q].magnitude >= m + h + 1) virt[q].magnitude -= 2 * (h + 1);
    }
  }
  if (!work.empty()) throw invariant_violation("a part received no relative height");
  return height;
}

inline CellAddress k1_initial_cell(const DiagramConfig& cfg) {
  const auto i = cfg.single_index();
  if (!i) throw domain_error("relative heights need k = 1");
  return cfg.initial_cell(*i);
}

}  // namespace detail

inline HeightAssignment relative_heights(const CmppPartition& p, FoldTrace* trace = nullptr) {
  const CellAddress init = detail::k1_initial_cell(p.config());
  if (!is_admissible(p)) throw domain_error("partition is not admissible");
  return {detail::compute_heights(p.config().ell(), init, p.cells(), trace)};
}

inline HeightProfile height_profile(const HeightAssignment& a, int ell) {
  std::vector<int> n(static_cast<std::size_t>(ell), 0);
  for (int h : a.relative) {
    if (h < 0 || h >= ell) throw usage_error("relative height out of range");
    ++n[h];
  }
  return HeightProfile(std::move(n));
}

}  // namespace cmpp
