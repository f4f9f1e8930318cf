#include <vector>

#include "catch_amalgamated.hpp"

#include "cmpp/diagram.hpp"
#include "cmpp/heights.hpp"

using namespace cmpp;

namespace {

std::vector<int> heights_of(const DiagramConfig& cfg, std::vector<Part> parts) {
  return relative_heights(CmppPartition(cfg, std::move(parts))).relative;
}

std::vector<CmppPartition> all_up_to(const DiagramConfig& cfg, int w) {
  std::vector<CmppPartition> out;
  enumerate_admissible(cfg, {w, std::nullopt, std::nullopt}, [&](const CmppPartition& p) { out.push_back(p); });
  return out;
}

}  // namespace

TEST_CASE("relative heights of the illustrations", "[heights]") {
  const DiagramConfig k2(3, {0, 0, 1, 0});
  const auto h2 = heights_of(k2, {{3, 0}, {7, 1}, {14, 2}, {23, 2}, {26, 2}, {34, 1}});
  CHECK(h2 == std::vector<int>{0, 1, 2, 2, 0, 1});
  CHECK(height_profile({h2}, 3) == HeightProfile({2, 2, 2}));

  const DiagramConfig k3(3, {0, 0, 0, 1});
  const auto h1 = heights_of(k3, {{2, 2}, {5, 2}, {12, 2}, {16, 2}, {18, 2}, {23, 0}});
  CHECK(h1 == std::vector<int>{0, 1, 1, 0, 2, 0});
  CHECK(height_profile({h1}, 3) == HeightProfile({3, 2, 1}));

  CHECK(heights_of(k3, {{1, 2}}) == std::vector<int>{0});
  CHECK(heights_of(k3, {}).empty());
  CHECK(height_profile({{}}, 3) == HeightProfile({0, 0, 0}));
}

TEST_CASE("relative heights reject unsupported input", "[heights]") {
  const DiagramConfig k3(3, {0, 0, 0, 1});
  CHECK_THROWS_AS(heights_of(k3, {{2, 1}, {5, 2}, {12, 2}, {16, 2}, {18, 2}, {23, 1}}), domain_error);
  CHECK_THROWS_AS(heights_of(DiagramConfig(2, {1, 0, 1}), {}), domain_error);
}

TEST_CASE("fold trace", "[heights]") {
  const CmppPartition p(DiagramConfig(3, {0, 0, 1, 0}), {{3, 0}, {7, 1}, {14, 2}, {23, 2}, {26, 2}, {34, 1}});
  FoldTrace trace;
  relative_heights(p, &trace);
  REQUIRE(trace.size() == 6);
  // Height-0 parts fold first; later parts shift left by the widths of the
  // folds to their left.
  CHECK(trace[0] == FoldEvent{0, 0, 3, 2});
  CHECK(trace[1] == FoldEvent{0, 4, 24, 2});
  for (const FoldEvent& e : trace) CHECK(e.shift == 2 * (e.round + 1));
}

TEST_CASE("height invariants over enumerated partitions", "[heights][property]") {
  for (Variant v : {Variant::standard, Variant::star, Variant::star_star, Variant::reflected})
    for (int ell = 1; ell <= 3; ++ell)
      for (int i = 0; i <= ell; ++i) {
        const auto cfg = DiagramConfig::single(ell, i, v);
        const CellAddress init = cfg.initial_cell(i);
        for (const auto& p : all_up_to(cfg, ell == 3 ? 14 : 18)) {
          FoldTrace trace;
          const HeightAssignment a = relative_heights(p, &trace);
          REQUIRE(a.relative.size() == p.parts().size());
          CHECK(relative_heights(p) == a);  // deterministic
          CHECK(trace.size() == p.parts().size());  // every part assigned once
          for (std::size_t t = 0; t < a.relative.size(); ++t) CHECK(a.relative[t] <= p.parts()[t].absolute_height);

          // Replay the folds: each one conceals exactly its own part, and
          // after round h no remaining part has h qualifying cells.
          std::vector<CellAddress> virt(p.cells().begin(), p.cells().end());
          std::vector<bool> live(virt.size(), true);
          std::size_t e = 0;
          for (int h = 0; h < ell; ++h) {
            for (; e < trace.size() && trace[e].round == h; ++e) {
              const FoldEvent& ev = trace[e];
              CHECK(virt[ev.part_index].magnitude == ev.virtual_magnitude);
              int inside = 0;
              for (std::size_t q = 0; q < virt.size(); ++q)
                if (live[q] && std::abs(virt[q].magnitude - ev.virtual_magnitude) <= h) ++inside;
              CHECK(inside == 1);
              live[ev.part_index] = false;
              for (std::size_t q = 0; q < virt.size(); ++q)
                if (live[q] && virt[q].magnitude >= ev.virtual_magnitude + h + 1) virt[q].magnitude -= ev.shift;
            }
            std::vector<std::size_t> work;
            for (std::size_t q = 0; q < virt.size(); ++q)
              if (live[q]) work.push_back(q);
            for (std::size_t pos = 0; pos < work.size(); ++pos) {
              const CellAddress* pred = pos > 0 ? &virt[work[pos - 1]] : &init;
              const CellAddress* succ = pos + 1 < work.size() ? &virt[work[pos + 1]] : nullptr;
              CHECK(detail::cells_above_legs(cfg.rows(), virt[work[pos]], pred, succ) > h);
            }
          }
        }
      }
}
