#pragma once

// The CMPP diagram: a grid of 2l rows, magnitudes along each row stepping by
// two, and k_j initial conditions on the boundary. A partition is admissible
// when every downward path (one cell per row, column changing by one per row)
// sums to at most k = k_0 + ... + k_l.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cmpp/errors.hpp"

namespace cmpp {

// standard: odd rows carry odd magnitudes, k_0 at the bottom.
// star: standard with the top row's magnitude cells deleted.
// star_star: even-first layout (odd rows carry even magnitudes, k_0 on top)
//            with the top row's magnitude cells deleted.
// reflected: the even-first layout with nothing deleted; the vertical mirror
//            of standard.
enum class Variant { standard, star, star_star, reflected };

inline std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::standard: return "standard";
    case Variant::star: return "star";
    case Variant::star_star: return "starstar";
    case Variant::reflected: return "reflected";
  }
  return "?";
}

inline std::optional<Variant> parse_variant(std::string_view s) {
  for (Variant v : {Variant::standard, Variant::star, Variant::star_star, Variant::reflected})
    if (s == to_string(v)) return v;
  if (s == "star_star") return Variant::star_star;
  return std::nullopt;
}

struct CellAddress {
  int row = 0;        // 1 (top) .. 2l (bottom)
  int magnitude = 0;  // -1 and 0 only for boundary cells
  friend auto operator<=>(const CellAddress&, const CellAddress&) = default;
};

struct Part {
  int magnitude = 0;
  int absolute_height = 0;
  friend auto operator<=>(const Part&, const Part&) = default;
};

class DiagramConfig {
 public:
  DiagramConfig(int ell, std::vector<int> k, Variant variant = Variant::standard)
      : ell_(ell), k_(std::move(k)), variant_(variant) {
    if (ell_ < 1) throw usage_error("ell must be >= 1");
    if (static_cast<int>(k_.size()) != ell_ + 1) throw usage_error("k vector must have ell+1 entries");
    for (int x : k_)
      if (x < 0) throw usage_error("negative initial condition");
    if (k_total() < 1) throw usage_error("initial conditions sum to zero");
  }

  // k_i = 1, all others 0.
  static DiagramConfig single(int ell, int i, Variant variant = Variant::standard) {
    if (ell < 1 || i < 0 || i > ell) throw usage_error("index must lie in 0..ell");
    std::vector<int> k(static_cast<std::size_t>(ell) + 1, 0);
    k[i] = 1;
    return DiagramConfig(ell, std::move(k), variant);
  }

  int ell() const { return ell_; }
  int rows() const { return 2 * ell_; }
  std::span<const int> k() const { return k_; }
  int k_total() const { return std::accumulate(k_.begin(), k_.end(), 0); }
  Variant variant() const { return variant_; }

  std::optional<int> single_index() const {
    if (k_total() != 1) return std::nullopt;
    return static_cast<int>(std::find(k_.begin(), k_.end(), 1) - k_.begin());
  }

  bool even_first() const { return variant_ == Variant::star_star || variant_ == Variant::reflected; }

  bool row_holds_odd(int row) const { return even_first() ? row % 2 == 0 : row % 2 == 1; }

  // Every grid position, including empty boundary cells and deleted cells.
  bool cell_exists(CellAddress c) const {
    if (c.row < 1 || c.row > rows() || c.magnitude < -1) return false;
    return (c.magnitude % 2 != 0) == row_holds_odd(c.row);
  }

  bool is_deleted(CellAddress c) const {
    return (variant_ == Variant::star || variant_ == Variant::star_star) && c.row == 1 && c.magnitude >= 1;
  }

  // Cells a part may occupy.
  bool part_cell(CellAddress c) const { return c.magnitude >= 1 && cell_exists(c) && !is_deleted(c); }

  CellAddress initial_cell(int j) const {
    if (j < 0 || j > ell_) throw usage_error("initial condition index out of range");
    if (even_first()) return j == 0 ? CellAddress{1, 0} : CellAddress{2 * j, -1};
    return j == 0 ? CellAddress{rows(), 0} : CellAddress{rows() - 2 * j + 1, -1};
  }

  friend bool operator==(const DiagramConfig&, const DiagramConfig&) = default;

 private:
  int ell_;
  std::vector<int> k_;
  Variant variant_;
};

// The row of a part: row pairs (1,2), (3,4), ... carry absolute heights
// l-1, l-2, ...; within a pair the parity of the magnitude picks the row.
inline CellAddress cell_of(const DiagramConfig& cfg, Part p) {
  if (p.magnitude < 1) throw domain_error("parts must be positive");
  if (p.absolute_height < 0 || p.absolute_height >= cfg.ell())
    throw domain_error("absolute height must lie in 0..ell-1");
  const bool odd_row = (p.magnitude % 2 != 0) == !cfg.even_first();
  const CellAddress c{2 * (cfg.ell() - p.absolute_height) - (odd_row ? 1 : 0), p.magnitude};
  if (cfg.is_deleted(c)) throw domain_error("part lies on a deleted cell");
  return c;
}

inline Part part_of(const DiagramConfig& cfg, CellAddress c) {
  if (!cfg.part_cell(c)) throw domain_error("not a part cell");
  return Part{c.magnitude, cfg.ell() - (c.row + 1) / 2};
}

// Magnitude ascending, absolute height descending (row ascending).
inline bool cell_order(const CellAddress& a, const CellAddress& b) {
  return a.magnitude != b.magnitude ? a.magnitude < b.magnitude : a.row < b.row;
}

// A multiset of parts placed on the diagram of cfg. Admissibility is a
// separate question (is_admissible); algorithms needing it check it.
class CmppPartition {
 public:
  CmppPartition(DiagramConfig cfg, std::vector<Part> parts) : cfg_(std::move(cfg)) {
    cells_.reserve(parts.size());
    for (const Part& p : parts) cells_.push_back(cell_of(cfg_, p));
    normalize();
  }

  static CmppPartition from_cells(DiagramConfig cfg, std::vector<CellAddress> cells) {
    CmppPartition p(std::move(cfg));
    for (const CellAddress& c : cells)
      if (!p.cfg_.part_cell(c)) throw domain_error("not a part cell");
    p.cells_ = std::move(cells);
    p.normalize();
    return p;
  }

  const DiagramConfig& config() const { return cfg_; }
  std::span<const Part> parts() const { return parts_; }
  std::span<const CellAddress> cells() const { return cells_; }
  int length() const { return static_cast<int>(parts_.size()); }

  long long weight() const {
    long long w = 0;
    for (const Part& p : parts_) w += p.magnitude;
    return w;
  }

  friend bool operator==(const CmppPartition&, const CmppPartition&) = default;

 private:
  explicit CmppPartition(DiagramConfig cfg) : cfg_(std::move(cfg)) {}

  void normalize() {
    std::sort(cells_.begin(), cells_.end(), cell_order);
    parts_.clear();
    for (const CellAddress& c : cells_) parts_.push_back(part_of(cfg_, c));
  }

  DiagramConfig cfg_;
  std::vector<CellAddress> cells_;
  std::vector<Part> parts_;
};

// Values on the diagram: part multiplicities plus the initial conditions.
class FrequencyGrid {
 public:
  explicit FrequencyGrid(const CmppPartition& p) : cfg_(p.config()) {
    for (const CellAddress& c : p.cells()) ++values_[c];
    for (int j = 0; j <= cfg_.ell(); ++j)
      if (cfg_.k()[j] != 0) values_[cfg_.initial_cell(j)] += cfg_.k()[j];
  }

  FrequencyGrid(DiagramConfig cfg, std::map<CellAddress, int> values)
      : cfg_(std::move(cfg)), values_(std::move(values)) {}

  const DiagramConfig& config() const { return cfg_; }
  const std::map<CellAddress, int>& values() const { return values_; }

  int value(CellAddress c) const {
    auto it = values_.find(c);
    return it == values_.end() ? 0 : it->second;
  }

  // Sum of magnitude times multiplicity over part cells.
  long long weight() const {
    long long w = 0;
    for (const auto& [c, v] : values_)
      if (c.magnitude >= 1) w += static_cast<long long>(c.magnitude) * v;
    return w;
  }

  int length() const {
    int n = 0;
    for (const auto& [c, v] : values_)
      if (c.magnitude >= 1) n += v;
    return n;
  }

 private:
  DiagramConfig cfg_;
  std::map<CellAddress, int> values_;
};

namespace detail {

// Row-by-row maximum over downward paths on columns [-1, hi].
template <class Value>
int max_path_dp(const DiagramConfig& cfg, int hi, Value&& value) {
  constexpr int kNone = -1;
  const int width = hi + 2;  // column m lives at index m + 1
  std::vector<int> prev(static_cast<std::size_t>(width), kNone), cur(prev.size());
  for (int r = 1; r <= cfg.rows(); ++r) {
    std::fill(cur.begin(), cur.end(), kNone);
    for (int m = -1; m <= hi; ++m) {
      if (!cfg.cell_exists({r, m})) continue;
      int best = 0;
      if (r > 1) {
        best = kNone;
        if (m - 1 >= -1) best = std::max(best, prev[m]);
        if (m + 1 <= hi) best = std::max(best, prev[m + 2]);
        if (best == kNone) continue;
      }
      cur[m + 1] = best + value(CellAddress{r, m});
    }
    std::swap(prev, cur);
  }
  return std::max(0, *std::max_element(prev.begin(), prev.end()));
}

inline bool k1_conflict(CellAddress a, CellAddress b) {
  return std::abs(a.magnitude - b.magnitude) <= std::abs(a.row - b.row);
}

}  // namespace detail

inline int max_downward_path_sum(const FrequencyGrid& g) {
  int hi = 0;
  for (const auto& [c, v] : g.values()) hi = std::max(hi, c.magnitude);
  hi += g.config().rows();
  return detail::max_path_dp(g.config(), hi, [&](CellAddress c) { return g.value(c); });
}

// For k = 1: no two positive cells (initial condition included) share a
// downward path, i.e. |m2 - m1| <= |r2 - r1| never holds between them.
inline bool pairwise_admissible(const DiagramConfig& cfg, std::span<const CellAddress> cells) {
  const auto i = cfg.single_index();
  if (!i) throw domain_error("pairwise rule needs k = 1");
  const CellAddress init = cfg.initial_cell(*i);
  for (std::size_t a = 0; a < cells.size(); ++a) {
    if (detail::k1_conflict(cells[a], init)) return false;
    for (std::size_t b = a + 1; b < cells.size(); ++b)
      if (detail::k1_conflict(cells[a], cells[b])) return false;
  }
  return true;
}

inline bool is_admissible(const CmppPartition& p) {
  const DiagramConfig& cfg = p.config();
  const bool by_paths = max_downward_path_sum(FrequencyGrid(p)) <= cfg.k_total();
  if (cfg.k_total() == 1) CMPP_ASSERT(by_paths == pairwise_admissible(cfg, p.cells()));
  return by_paths;
}

// Exact counts F(j, n): j parts of total weight n.
class CountTable {
 public:
  CountTable(int max_j, int max_n)
      : max_j_(max_j), max_n_(max_n), cells_(static_cast<std::size_t>(max_j + 1) * (max_n + 1), 0) {}

  int max_j() const { return max_j_; }
  int max_n() const { return max_n_; }

  std::uint64_t at(int j, int n) const {
    if (j < 0 || n < 0 || j > max_j_ || n > max_n_) return 0;
    return cells_[index(j, n)];
  }

  void add(int j, int n, std::uint64_t v = 1) {
    if (j < 0 || n < 0 || j > max_j_ || n > max_n_) throw usage_error("count cell outside table");
    cells_[index(j, n)] += v;
  }

  // Number of objects of weight n, any number of parts.
  std::uint64_t total(int n) const {
    std::uint64_t s = 0;
    for (int j = 0; j <= max_j_; ++j) s += at(j, n);
    return s;
  }

  friend bool operator==(const CountTable&, const CountTable&) = default;

 private:
  std::size_t index(int j, int n) const { return static_cast<std::size_t>(j) * (max_n_ + 1) + n; }

  int max_j_, max_n_;
  std::vector<std::uint64_t> cells_;
};

struct EnumerateOptions {
  int max_weight = 0;
  std::optional<int> max_part;   // largest allowed magnitude
  std::optional<int> max_parts;  // largest allowed number of parts
};

// Depth-first visit of every admissible partition within the options, each
// exactly once; the visitor sees the cells sorted by cell_order. Magnitudes
// are added in increasing order; at one magnitude, multiplicity vectors over
// the rows are tried with rows ascending (absolute height descending).
template <class Visitor>
void visit_admissible_cells(const DiagramConfig& cfg, const EnumerateOptions& opt, Visitor&& visit) {
  if (opt.max_weight < 0) throw usage_error("negative weight bound");
  const int k = cfg.k_total();
  const int top = std::min(opt.max_weight, opt.max_part.value_or(opt.max_weight));
  const int max_parts = opt.max_parts.value_or(opt.max_weight);
  const std::optional<int> single = cfg.single_index();
  const std::optional<CellAddress> init = single ? std::optional(cfg.initial_cell(*single)) : std::nullopt;

  std::vector<CellAddress> chosen;
  std::map<CellAddress, int> values;
  for (int j = 0; j <= cfg.ell(); ++j)
    if (cfg.k()[j] != 0) values[cfg.initial_cell(j)] += cfg.k()[j];

  auto admissible_after_push = [&](std::size_t added, int hi) {
    if (init) {
      // k = 1: only the new cell can create a conflict.
      const CellAddress c = chosen.back();
      if (detail::k1_conflict(c, *init)) return false;
      for (std::size_t t = 0; t + 1 < chosen.size(); ++t)
        if (detail::k1_conflict(c, chosen[t])) return false;
      return true;
    }
    (void)added;
    return detail::max_path_dp(cfg, hi + cfg.rows(), [&](CellAddress c) {
             auto it = values.find(c);
             return it == values.end() ? 0 : it->second;
           }) <= k;
  };

  std::function<void(int, long long)> extend = [&](int last, long long weight) {
    visit(std::span<const CellAddress>(chosen));
    const int length = static_cast<int>(chosen.size());
    if (length >= max_parts) return;
    for (int m = last + 1; m <= top && weight + m <= opt.max_weight; ++m) {
      std::vector<int> rows;
      for (int r = 1; r <= cfg.rows(); ++r)
        if (cfg.part_cell({r, m})) rows.push_back(r);
      // Nonzero multiplicity vectors over rows, total at most k.
      std::vector<int> mult(rows.size(), 0);
      std::function<void(std::size_t, int)> choose = [&](std::size_t idx, int used) {
        if (idx == rows.size()) {
          if (used == 0) return;
          extend(m, weight + static_cast<long long>(m) * used);
          return;
        }
        // Higher multiplicities first on earlier rows keeps the k = 1 order
        // "rows ascending".
        for (int f = std::min(k - used, max_parts - length - used); f >= 0; --f) {
          if (f > 0 && weight + static_cast<long long>(m) * (used + f) > opt.max_weight) continue;
          const std::size_t before = chosen.size();
          bool ok = true;
          if (f > 0) {
            values[{rows[idx], m}] += f;
            for (int t = 0; t < f; ++t) chosen.push_back({rows[idx], m});
            ok = admissible_after_push(static_cast<std::size_t>(f), m);
          }
          if (ok) choose(idx + 1, used + f);
          if (f > 0) {
            chosen.resize(before);
            if ((values[{rows[idx], m}] -= f) == 0) values.erase({rows[idx], m});
          }
        }
      };
      choose(0, 0);
    }
  };
  extend(0, 0);
}

inline CountTable enumerate_admissible(const DiagramConfig& cfg, const EnumerateOptions& opt) {
  CountTable t(opt.max_weight, opt.max_weight);
  visit_admissible_cells(cfg, opt, [&](std::span<const CellAddress> cells) {
    long long w = 0;
    for (const CellAddress& c : cells) w += c.magnitude;
    t.add(static_cast<int>(cells.size()), static_cast<int>(w));
  });
  return t;
}

// Same enumeration, also streaming each partition to sink in visit order.
inline CountTable enumerate_admissible(const DiagramConfig& cfg, const EnumerateOptions& opt,
                                       const std::function<void(const CmppPartition&)>& sink) {
  CountTable t(opt.max_weight, opt.max_weight);
  visit_admissible_cells(cfg, opt, [&](std::span<const CellAddress> cells) {
    CmppPartition p = CmppPartition::from_cells(cfg, {cells.begin(), cells.end()});
    t.add(p.length(), static_cast<int>(p.weight()));
    if (sink) sink(p);
  });
  return t;
}

enum class FrequencyKind { rrg, bressoud };

// Partitions by part frequencies f_1, f_2, ...: f_j + f_{j+1} <= k and
// f_1 <= a - 1; for bressoud additionally, whenever f_{j-1} + f_j = k,
// (j-1) f_{j-1} + j f_j = a - 1 (mod 2).
inline CountTable frequency_condition_counts(FrequencyKind kind, int k, int a, int max_weight) {
  if (k < 1) throw usage_error("k must be >= 1");
  if (a < 1 || a > k + 1) throw usage_error("residue index must lie in 1..k+1");
  if (max_weight < 0) throw usage_error("negative weight bound");
  CountTable t(max_weight, max_weight);
  std::function<void(int, int, int, int)> rec = [&](int j, int fprev, int weight, int length) {
    if (j > max_weight - weight) {
      // Only zero frequencies remain; the pair (f_{j-1}, f_j = 0) is the
      // last one that can reach k.
      if (kind == FrequencyKind::bressoud && j > 1 && fprev == k && ((j - 1) * fprev) % 2 != (a - 1) % 2)
        return;
      t.add(length, weight);
      return;
    }
    for (int f = 0; f <= k; ++f) {
      if (weight + f * j > max_weight) break;
      if (j == 1 && f > a - 1) break;
      if (j > 1 && fprev + f > k) break;
      if (kind == FrequencyKind::bressoud && j > 1 && fprev + f == k &&
          ((j - 1) * fprev + j * f) % 2 != (a - 1) % 2)
        continue;
      rec(j + 1, f, weight + f * j, length + f);
    }
  };
  rec(1, 0, 0, 0);
  return t;
}

// Mirror a standard partition into the reflected layout: (m, a) -> (m, l-1-a).
inline CmppPartition reflect(const CmppPartition& p) {
  if (p.config().variant() != Variant::standard) throw usage_error("reflect expects a standard partition");
  const int ell = p.config().ell();
  std::vector<int> k(p.config().k().begin(), p.config().k().end());
  std::vector<Part> parts;
  for (const Part& q : p.parts()) parts.push_back({q.magnitude, ell - 1 - q.absolute_height});
  return CmppPartition(DiagramConfig(ell, std::move(k), Variant::reflected), std::move(parts));
}

// Counts of standard and reflected diagrams agree for k_i = 1.
inline bool reflect_counts_check(int ell, int i, int max_weight) {
  const EnumerateOptions opt{max_weight, std::nullopt, std::nullopt};
  return enumerate_admissible(DiagramConfig::single(ell, i, Variant::standard), opt) ==
         enumerate_admissible(DiagramConfig::single(ell, i, Variant::reflected), opt);
}

}  // namespace cmpp
