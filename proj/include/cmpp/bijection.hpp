#pragma once

// Forward and backward moves of single parts, and the bijection between
// k = 1 CMPP partitions and pairs (base partition, vector partition).
//
// A move shifts one part by one diagonal step (or two steps along its row for
// the top height class of the star variants) and is allowed only when the
// result is admissible and every part keeps its relative height. A backward
// move may also land level, at distance 2h+2, to the right of a higher part;
// the two heights then trade places and the higher part carries on.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cmpp/diagram.hpp"
#include "cmpp/errors.hpp"
#include "cmpp/heights.hpp"
#include "cmpp/qseries.hpp"

namespace cmpp {

// One partition per relative height class; component s-1 lists the number of
// moves of the parts of height s-1, non-decreasing.
class VectorPartition {
 public:
  VectorPartition() = default;
  explicit VectorPartition(std::vector<std::vector<int>> components) : comps_(std::move(components)) {
    for (const auto& c : comps_) {
      if (!std::is_sorted(c.begin(), c.end())) throw usage_error("vector partition component not non-decreasing");
      if (!c.empty() && c.front() < 0) throw usage_error("negative vector partition entry");
    }
  }

  int ell() const { return static_cast<int>(comps_.size()); }
  const std::vector<std::vector<int>>& components() const { return comps_; }

  std::vector<int> shape() const {
    std::vector<int> s;
    for (const auto& c : comps_) s.push_back(static_cast<int>(c.size()));
    return s;
  }

  friend bool operator==(const VectorPartition&, const VectorPartition&) = default;

 private:
  std::vector<std::vector<int>> comps_;
};

struct MoveOutcome {
  CmppPartition partition;
  HeightAssignment heights;
  std::size_t token = 0;  // index of the part that continues moving
  bool swapped = false;   // the moving height passed to a neighbour
  int weight_delta = 0;
};

inline Family family_of(Variant v) {
  switch (v) {
    case Variant::standard: return Family::main;
    case Variant::star: return Family::star;
    case Variant::star_star: return Family::star_star;
    case Variant::reflected: break;
  }
  throw usage_error("the reflected layout has no family of its own");
}

// Weight change of one move of a part of relative height h.
inline int move_unit(const DiagramConfig& cfg, int h) {
  const bool starred = cfg.variant() == Variant::star || cfg.variant() == Variant::star_star;
  return starred && h == cfg.ell() - 1 ? 2 : 1;
}

namespace detail {

struct Placement {
  std::vector<CellAddress> cells;  // cell_order
  std::vector<int> heights;        // parallel to cells
};

struct Moved {
  Placement placement;
  std::size_t token;
  bool swapped;
};

// Try to move cells[idx] one unit in direction delta (+1 forward, -1
// backward), predicting that every part keeps the height in pl.heights.
inline std::optional<Moved> try_move(const DiagramConfig& cfg, CellAddress init, const Placement& pl,
                                     std::size_t idx, int delta) {
  const CellAddress at = pl.cells[idx];
  const int h = pl.heights[idx];
  std::vector<CellAddress> cands;
  if (move_unit(cfg, h) == 2)
    cands = {{at.row, at.magnitude + 2 * delta}};
  else
    cands = {{at.row - 1, at.magnitude + delta}, {at.row + 1, at.magnitude + delta}};

  std::optional<Moved> found;
  for (const CellAddress& to : cands) {
    if (!cfg.part_cell(to)) continue;
    std::vector<std::pair<CellAddress, int>> next;
    for (std::size_t t = 0; t < pl.cells.size(); ++t)
      next.emplace_back(t == idx ? to : pl.cells[t], pl.heights[t]);
    std::sort(next.begin(), next.end(), [](const auto& a, const auto& b) { return cell_order(a.first, b.first); });
    Placement cand;
    std::vector<int> predicted;
    std::size_t j = 0;
    for (std::size_t t = 0; t < next.size(); ++t) {
      cand.cells.push_back(next[t].first);
      predicted.push_back(next[t].second);
      if (next[t].first == to) j = t;
    }
    if (!pairwise_admissible(cfg, cand.cells)) continue;  // also rejects repeated magnitudes
    cand.heights = compute_heights(cfg.ell(), init, cand.cells);

    std::optional<Moved> ok;
    if (cand.heights == predicted) {
      ok = Moved{cand, j, false};
    } else if (delta < 0 && j > 0) {
      const CellAddress left = cand.cells[j - 1];
      if (left.row == to.row && left.magnitude == to.magnitude - 2 * h - 2 && predicted[j - 1] > h) {
        std::swap(predicted[j - 1], predicted[j]);
        if (cand.heights == predicted) ok = Moved{cand, j - 1, true};
      }
    }
    if (ok) {
      CMPP_ASSERT(!found);
      found = std::move(ok);
    }
  }
  return found;
}

inline std::optional<Moved> backward(const DiagramConfig& cfg, CellAddress init, const Placement& pl, std::size_t idx) {
  return try_move(cfg, init, pl, idx, -1);
}

// Forward move with the exceptional rule: a level successor at m+2h+2 with a
// greater height first trades heights with the mover and then moves itself.
inline std::optional<Moved> forward(const DiagramConfig& cfg, CellAddress init, const Placement& pl, std::size_t idx) {
  const CellAddress at = pl.cells[idx];
  const int h = pl.heights[idx];
  if (idx + 1 < pl.cells.size()) {
    const CellAddress next = pl.cells[idx + 1];
    if (next.row == at.row && next.magnitude == at.magnitude + 2 * h + 2 && pl.heights[idx + 1] > h) {
      Placement swapped = pl;
      std::swap(swapped.heights[idx], swapped.heights[idx + 1]);
      auto r = try_move(cfg, init, swapped, idx + 1, +1);
      if (!r) return std::nullopt;
      r->swapped = true;
      return r;
    }
  }
  return try_move(cfg, init, pl, idx, +1);
}

inline Placement placement_of(const CmppPartition& p) {
  const CellAddress init = k1_initial_cell(p.config());
  return {{p.cells().begin(), p.cells().end()}, compute_heights(p.config().ell(), init, p.cells())};
}

inline void check_move_input(const CmppPartition& p, const HeightAssignment& a, std::size_t idx) {
  k1_initial_cell(p.config());
  if (!is_admissible(p)) throw domain_error("partition is not admissible");
  if (idx >= p.parts().size()) throw usage_error("part index out of range");
  if (a.relative.size() != p.parts().size()) throw usage_error("height assignment has the wrong length");
}

inline MoveOutcome outcome(const DiagramConfig& cfg, const Moved& m, long long before) {
  CmppPartition next = CmppPartition::from_cells(cfg, m.placement.cells);
  const int delta = static_cast<int>(next.weight() - before);
  return {std::move(next), {m.placement.heights}, m.token, m.swapped, delta};
}

// Retreat without the final comparison against base_partition.
inline std::pair<Placement, std::vector<std::vector<int>>> retreat_moves(const DiagramConfig& cfg, Placement pl) {
  const CellAddress init = k1_initial_cell(cfg);
  const int ell = cfg.ell();
  std::vector<std::vector<int>> counts(static_cast<std::size_t>(ell));
  std::vector<int> n(static_cast<std::size_t>(ell), 0);
  for (int h : pl.heights) ++n[h];
  for (int s = 0; s < ell; ++s) {
    for (int t = 0; t < n[s]; ++t) {
      // The t-th smallest part of height s in the current partition.
      std::size_t tok = 0;
      for (int seen = -1; tok < pl.heights.size(); ++tok)
        if (pl.heights[tok] == s && ++seen == t) break;
      int moves = 0;
      while (auto m = backward(cfg, init, pl, tok)) {
        pl = std::move(m->placement);
        tok = m->token;
        ++moves;
      }
      counts[s].push_back(moves);
    }
  }
  return {std::move(pl), std::move(counts)};
}

}  // namespace detail

// pre: a is the current relative-height assignment of p (else usage_error).
inline std::optional<MoveOutcome> forward_move(const CmppPartition& p, const HeightAssignment& a, std::size_t idx) {
  detail::check_move_input(p, a, idx);
  const detail::Placement pl = detail::placement_of(p);
  if (pl.heights != a.relative) throw usage_error("stale height assignment");
  auto m = detail::forward(p.config(), detail::k1_initial_cell(p.config()), pl, idx);
  if (!m) return std::nullopt;
  return detail::outcome(p.config(), *m, p.weight());
}

inline std::optional<MoveOutcome> backward_move(const CmppPartition& p, const HeightAssignment& a, std::size_t idx) {
  detail::check_move_input(p, a, idx);
  const detail::Placement pl = detail::placement_of(p);
  if (pl.heights != a.relative) throw usage_error("stale height assignment");
  auto m = detail::backward(p.config(), detail::k1_initial_cell(p.config()), pl, idx);
  if (!m) return std::nullopt;
  return detail::outcome(p.config(), *m, p.weight());
}

// sum N_s^2 + the family's linear form.
inline long long base_weight(Family f, int ell, int i, const HeightProfile& profile) {
  if (profile.ell() != ell) throw usage_error("profile length != ell");
  const std::vector<int> N = profile.tails();
  long long w = 0;
  for (int x : N) w += static_cast<long long>(x) * x;
  return w + linear_form(f, ell, i, N);
}

// The unique minimum-weight admissible partition with the given profile:
// spread the parts far apart at absolute height = wanted relative height,
// then retreat every part as far as it goes.
inline CmppPartition base_partition(const DiagramConfig& cfg, const HeightProfile& profile) {
  const auto i = cfg.single_index();
  if (!i) throw domain_error("base partitions need k = 1");
  if (cfg.variant() == Variant::reflected) throw usage_error("base partitions are defined for standard, star, starstar");
  const int ell = cfg.ell();
  if (profile.ell() != ell) throw usage_error("profile length != ell");

  const int gap = 2 * ell * (profile.total() + ell + 2);
  const bool even_parts = cfg.variant() == Variant::star;
  std::vector<Part> parts;
  int pos = 0;
  for (int h = 0; h < ell; ++h)
    for (int t = 0; t < profile.counts()[h]; ++t) {
      pos += gap;
      if ((pos % 2 == 0) != even_parts) ++pos;
      parts.push_back({pos, h});
    }
  const CmppPartition witness(cfg, parts);
  const detail::Placement pl = detail::placement_of(witness);
  CMPP_ASSERT(height_profile({pl.heights}, ell) == profile);

  auto [base, counts] = detail::retreat_moves(cfg, pl);
  CmppPartition out = CmppPartition::from_cells(cfg, std::move(base.cells));
  if (out.weight() != base_weight(family_of(cfg.variant()), ell, *i, profile))
    throw invariant_violation("base weight disagrees with the quadratic plus linear form");
  return out;
}

struct Decomposition {
  HeightProfile profile;
  CmppPartition base;
  VectorPartition vector;
};

// Retreat every part: heights 0, 1, ... in turn, the smallest part of each
// class first, each as far back as it goes. Counts are recorded in that
// order, which is non-decreasing.
inline Decomposition retreat(const CmppPartition& p) {
  detail::k1_initial_cell(p.config());
  if (!is_admissible(p)) throw domain_error("partition is not admissible");
  const detail::Placement pl = detail::placement_of(p);
  const HeightProfile profile = height_profile({pl.heights}, p.config().ell());
  auto [base, counts] = detail::retreat_moves(p.config(), pl);
  for (const auto& c : counts)
    if (!std::is_sorted(c.begin(), c.end())) throw invariant_violation("retreat counts decrease");
  CmppPartition b = CmppPartition::from_cells(p.config(), std::move(base.cells));
  if (b != base_partition(p.config(), profile)) throw invariant_violation("retreat did not reach the base partition");
  return {profile, std::move(b), VectorPartition(std::move(counts))};
}

// Inverse of retreat: heights l-1, ..., 0 in turn, the largest part of each
// class moved forward by the largest count first.
inline CmppPartition advance(const CmppPartition& base, const VectorPartition& v) {
  const DiagramConfig& cfg = base.config();
  detail::k1_initial_cell(cfg);
  if (!is_admissible(base)) throw domain_error("base is not admissible");
  detail::Placement pl = detail::placement_of(base);
  const HeightProfile profile = height_profile({pl.heights}, cfg.ell());
  if (v.ell() != cfg.ell() || v.shape() != std::vector<int>(profile.counts().begin(), profile.counts().end()))
    throw usage_error("vector partition shape does not match the base profile");
  if (base != base_partition(cfg, profile)) throw usage_error("not a base partition");

  const CellAddress init = detail::k1_initial_cell(cfg);
  for (int s = cfg.ell() - 1; s >= 0; --s) {
    const auto& comp = v.components()[s];
    const int n = static_cast<int>(comp.size());
    for (int t = 0; t < n; ++t) {
      const int rank = n - 1 - t;  // position among the class, from the smallest
      std::size_t tok = 0;
      for (int seen = -1; tok < pl.heights.size(); ++tok)
        if (pl.heights[tok] == s && ++seen == rank) break;
      for (int step = 0; step < comp[rank]; ++step) {
        auto m = detail::forward(cfg, init, pl, tok);
        if (!m) throw invariant_violation("forward move failed during advance");
        pl = std::move(m->placement);
        tok = m->token;
      }
    }
  }
  return CmppPartition::from_cells(cfg, std::move(pl.cells));
}

}  // namespace cmpp
