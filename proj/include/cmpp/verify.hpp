#pragma once

// Exact comparison of a generating function against brute-force counts.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cmpp/diagram.hpp"
#include "cmpp/errors.hpp"
#include "cmpp/io.hpp"
#include "cmpp/qseries.hpp"

namespace cmpp {

enum class VerifyFamily { main, star, star_star, ag, bressoud, bounded_p0 };

inline std::optional<VerifyFamily> parse_verify_family(std::string_view s) {
  if (s == "bounded-p0") return VerifyFamily::bounded_p0;
  if (auto f = parse_family(s)) return static_cast<VerifyFamily>(static_cast<int>(*f));
  return std::nullopt;
}

inline std::string to_string(VerifyFamily f) {
  if (f == VerifyFamily::bounded_p0) return "bounded-p0";
  return std::string(to_string(static_cast<Family>(static_cast<int>(f))));
}

struct VerifyRequest {
  VerifyFamily family = VerifyFamily::main;
  int ell = 1;
  int index = 0;  // i, or the residue a for ag/bressoud
  int max_weight = 0;
  int max_z = 0;
  std::optional<int> bound;  // M, bounded-p0 only
  bool perturb = false;      // add N_1 to the linear form (negative control)
};

struct VerifyCell {
  int j = 0;
  int n = 0;
  BigInt series;
  std::uint64_t count = 0;
};

struct VerificationReport {
  VerifyRequest request;
  std::vector<VerifyCell> cells;  // every (j, n) where either side is nonzero
  std::size_t mismatches = 0;
  std::string bound_semantics;    // bounded-p0: "M", "M-1" or "none"
  bool pass = false;
};

namespace detail {

inline std::vector<VerifyCell> compare(const BivariateSeries& s, const CountTable& t, std::size_t& mismatches) {
  std::vector<VerifyCell> cells;
  mismatches = 0;
  for (int j = 0; j <= s.z_truncation(); ++j)
    for (int n = 0; n <= s.q_truncation(); ++n) {
      const BigInt& c = s.coefficient(j, n);
      const std::uint64_t e = t.at(j, n);
      if (c == 0 && e == 0) continue;
      if (c != e) ++mismatches;
      cells.push_back({j, n, c, e});
    }
  // Counts outside the series' z range are simply not compared.
  return cells;
}

}  // namespace detail

inline VerificationReport verify(const VerifyRequest& rq) {
  if (rq.max_weight < 0 || rq.max_z < 0) throw usage_error("negative truncation");
  VerificationReport rep;
  rep.request = rq;
  const int Q = rq.max_weight, Z = rq.max_z;

  if (rq.family == VerifyFamily::bounded_p0) {
    if (!rq.bound) throw usage_error("bounded-p0 needs --bound");
    if (rq.perturb) throw usage_error("perturbation is not defined for bounded-p0");
    const BivariateSeries s = bounded_p0_series(rq.ell, *rq.bound, Q, Z);
    const DiagramConfig cfg = DiagramConfig::single(rq.ell, 0);
    rep.bound_semantics = "none";
    for (int shift : {0, 1}) {
      const CountTable t = enumerate_admissible(cfg, {Q, std::max(0, *rq.bound - shift), std::nullopt});
      std::size_t bad = 0;
      auto cells = detail::compare(s, t, bad);
      if (shift == 0 || bad == 0) {
        rep.cells = std::move(cells);
        rep.mismatches = bad;
      }
      if (bad == 0) {
        rep.bound_semantics = shift == 0 ? "M" : "M-1";
        break;
      }
    }
    rep.pass = rep.bound_semantics != "none";
    return rep;
  }

  const Family f = static_cast<Family>(static_cast<int>(rq.family));
  MultiSumSpec spec = family_spec(f, rq.ell, rq.index, Q, Z);
  if (rq.perturb) {
    auto base = spec.linear_form;
    spec.linear_form = [base](std::span<const int> N) { return base(N) + N[0]; };
  }
  const BivariateSeries s = multisum_series(spec);

  CountTable t(Q, Q);
  switch (f) {
    case Family::main:
    case Family::star:
    case Family::star_star: {
      const Variant v = f == Family::main ? Variant::standard : f == Family::star ? Variant::star : Variant::star_star;
      t = enumerate_admissible(DiagramConfig::single(rq.ell, rq.index, v), {Q, std::nullopt, std::nullopt});
      break;
    }
    case Family::ag:
      t = frequency_condition_counts(FrequencyKind::rrg, rq.ell, rq.index, Q);
      break;
    case Family::bressoud:
      t = frequency_condition_counts(FrequencyKind::bressoud, rq.ell, rq.index, Q);
      break;
  }
  rep.cells = detail::compare(s, t, rep.mismatches);
  rep.pass = rep.mismatches == 0;
  return rep;
}

// Worker count: CMPP_THREADS if set and positive, else the hardware's.
inline unsigned thread_budget() {
  if (const char* env = std::getenv("CMPP_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs the requests concurrently; the result order matches the input order.
inline std::vector<VerificationReport> verify_all(const std::vector<VerifyRequest>& rqs, unsigned threads = thread_budget()) {
  std::vector<VerificationReport> out(rqs.size());
  std::vector<std::exception_ptr> errors(rqs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t t; (t = next++) < rqs.size();) {
      try {
        out[t] = verify(rqs[t]);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(rqs.size())));
  for (unsigned w = 1; w < n; ++w) pool.emplace_back(work);
  work();
  pool.clear();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

namespace io {

inline json to_json(const VerificationReport& r) {
  json cells = json::array();
  for (const VerifyCell& c : r.cells)
    cells.push_back({{"j", c.j}, {"n", c.n}, {"series", decimal(c.series)}, {"count", std::to_string(c.count)},
                     {"match", c.series == c.count}});
  json out = {{"family", to_string(r.request.family)},
              {"ell", r.request.ell},
              {"index", r.request.index},
              {"max_weight", r.request.max_weight},
              {"max_z", r.request.max_z}};
  if (r.request.bound) {
    out["bound"] = *r.request.bound;
    out["bound_semantics"] = r.bound_semantics;
  }
  if (r.request.perturb) out["perturbed"] = true;
  out["cells"] = cells;
  out["mismatches"] = r.mismatches;
  out["pass"] = r.pass;
  return out;
}

inline std::string to_csv(const VerificationReport& r) {
  std::ostringstream os;
  os << "j,n,series,count,match\n";
  for (const VerifyCell& c : r.cells)
    os << c.j << ',' << c.n << ',' << c.series << ',' << c.count << ',' << (c.series == c.count ? 1 : 0) << '\n';
  return os.str();
}

}  // namespace io

}  // namespace cmpp
