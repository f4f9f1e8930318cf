#pragma once

// Truncated power series in q with arbitrary-precision coefficients, and the
// bivariate multi-sum generating functions built from them.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cmpp/errors.hpp"

namespace cmpp {

using BigInt = boost::multiprecision::cpp_int;

// Polynomial in q truncated at degree Q. Coefficients beyond Q are unknown,
// never zero, so operands of different truncation are rejected.
class QPolynomial {
 public:
  explicit QPolynomial(int truncation) : coeffs_(checked(truncation) + 1) {}

  QPolynomial(int truncation, std::vector<BigInt> coeffs) : QPolynomial(truncation) {
    const std::size_t n = std::min(coeffs.size(), coeffs_.size());
    std::move(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(n), coeffs_.begin());
  }

  static QPolynomial one(int truncation) { return monomial(truncation, 0); }

  static QPolynomial monomial(int truncation, int degree, BigInt c = 1) {
    QPolynomial p(truncation);
    if (degree < 0) throw usage_error("negative degree");
    if (degree <= truncation) p.coeffs_[degree] = std::move(c);
    return p;
  }

  int truncation() const { return static_cast<int>(coeffs_.size()) - 1; }

  const BigInt& operator[](int d) const { return coeffs_.at(index(d)); }
  BigInt& operator[](int d) { return coeffs_.at(index(d)); }

  std::span<const BigInt> coefficients() const { return coeffs_; }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigInt& c) { return c == 0; });
  }

  // Explicit re-truncation; raising Q would invent coefficients.
  QPolynomial truncated(int q) const {
    if (q > truncation()) throw usage_error("cannot raise truncation");
    return QPolynomial(q, std::vector<BigInt>(coeffs_.begin(), coeffs_.begin() + checked(q) + 1));
  }

  // Multiply by q^by, dropping whatever passes the truncation.
  QPolynomial shifted(int by) const {
    if (by < 0) throw usage_error("negative shift");
    QPolynomial r(truncation());
    for (int d = 0; d + by <= truncation(); ++d) r.coeffs_[d + by] = coeffs_[d];
    return r;
  }

  QPolynomial& operator+=(const QPolynomial& o) {
    same_truncation(o);
    for (std::size_t d = 0; d < coeffs_.size(); ++d) coeffs_[d] += o.coeffs_[d];
    return *this;
  }
  QPolynomial& operator-=(const QPolynomial& o) {
    same_truncation(o);
    for (std::size_t d = 0; d < coeffs_.size(); ++d) coeffs_[d] -= o.coeffs_[d];
    return *this;
  }
  friend QPolynomial operator+(QPolynomial a, const QPolynomial& b) { return a += b; }
  friend QPolynomial operator-(QPolynomial a, const QPolynomial& b) { return a -= b; }
  friend bool operator==(const QPolynomial&, const QPolynomial&) = default;

  friend std::ostream& operator<<(std::ostream& os, const QPolynomial& p) {
    bool first = true;
    for (int d = 0; d <= p.truncation(); ++d) {
      const BigInt& c = p.coeffs_[d];
      if (c == 0) continue;
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      const BigInt a = abs(c);
      if (a != 1 || d == 0) os << a;
      if (d > 0) os << (a != 1 ? "*" : "") << "q" << (d > 1 ? "^" + std::to_string(d) : "");
      first = false;
    }
    if (first) os << "0";
    return os << " + O(q^" << p.truncation() + 1 << ")";
  }

 private:
  static int checked(int q) {
    if (q < 0) throw usage_error("negative truncation");
    return q;
  }
  std::size_t index(int d) const {
    if (d < 0 || d > truncation()) throw usage_error("degree outside truncation");
    return static_cast<std::size_t>(d);
  }
  void same_truncation(const QPolynomial& o) const {
    if (o.truncation() != truncation()) throw usage_error("truncation mismatch");
  }

  std::vector<BigInt> coeffs_;
};

inline QPolynomial poly_mul_truncated(const QPolynomial& a, const QPolynomial& b) {
  if (a.truncation() != b.truncation()) throw usage_error("truncation mismatch");
  const int q = a.truncation();
  std::vector<BigInt> c(static_cast<std::size_t>(q) + 1);
  for (int i = 0; i <= q; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= q; ++j)
      if (b[j] != 0) c[i + j] += a[i] * b[j];
  }
  return QPolynomial(q, std::move(c));
}

// Power-series inverse modulo q^{Q+1}; needs constant term +-1.
inline QPolynomial poly_inverse_unit(const QPolynomial& p) {
  const BigInt& p0 = p[0];
  if (p0 != 1 && p0 != -1) throw usage_error("constant term is not a unit");
  const int q = p.truncation();
  std::vector<BigInt> b(static_cast<std::size_t>(q) + 1);
  b[0] = p0;
  for (int n = 1; n <= q; ++n) {
    BigInt s = 0;
    for (int j = 1; j <= n; ++j)
      if (p[j] != 0) s += p[j] * b[n - j];
    b[n] = -p0 * s;
  }
  return QPolynomial(q, std::move(b));
}

// prod_{t=1..count} (1 - q^{base*t})
inline QPolynomial pochhammer(int base, int count, int truncation) {
  if (base < 1 || count < 0) throw usage_error("pochhammer needs base >= 1, count >= 0");
  std::vector<BigInt> c(static_cast<std::size_t>(truncation) + 1);
  c[0] = 1;
  for (int t = 1; t <= count; ++t) {
    const long long step = static_cast<long long>(base) * t;
    if (step > truncation) break;
    for (int d = truncation; d >= step; --d) c[d] -= c[d - step];
  }
  return QPolynomial(truncation, std::move(c));
}

namespace detail {

using ExactPoly = std::vector<BigInt>;

inline ExactPoly exact_mul(const ExactPoly& a, const ExactPoly& b) {
  ExactPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// (q;q)_n without truncation.
inline ExactPoly exact_qq(int n) {
  ExactPoly p{1};
  for (int t = 1; t <= n; ++t) {
    ExactPoly f(static_cast<std::size_t>(t) + 1);
    f[0] = 1;
    f[t] = -1;
    p = exact_mul(p, f);
  }
  return p;
}

}  // namespace detail

// (q;q)_a / ((q;q)_b (q;q)_{a-b}), zero outside 0 <= b <= a.
inline QPolynomial gaussian_binomial(int a, int b, int truncation) {
  if (b < 0 || b > a) return QPolynomial(truncation);
  const detail::ExactPoly num = detail::exact_qq(a);
  const detail::ExactPoly den = detail::exact_mul(detail::exact_qq(b), detail::exact_qq(a - b));
  const std::size_t deg = num.size() - den.size();
  detail::ExactPoly quo(deg + 1);
  for (std::size_t n = 0; n <= deg; ++n) {
    BigInt s = num[n];
    for (std::size_t j = 1; j <= n && j < den.size(); ++j) s -= den[j] * quo[n - j];
    quo[n] = s;  // den[0] == 1
  }
  CMPP_ASSERT(detail::exact_mul(den, quo) == num);
  return QPolynomial(truncation, std::move(quo));
}

// Relative-height class sizes n_1..n_l, stored 0-based: counts()[h] is the
// number of parts of relative height h. tails()[s-1] is N_s.
class HeightProfile {
 public:
  HeightProfile() = default;
  explicit HeightProfile(std::vector<int> counts) : n_(std::move(counts)) {
    if (n_.empty()) throw usage_error("empty profile");
    for (int x : n_)
      if (x < 0) throw usage_error("negative profile entry");
  }

  int ell() const { return static_cast<int>(n_.size()); }
  std::span<const int> counts() const { return n_; }

  std::vector<int> tails() const {
    std::vector<int> t(n_.size());
    int acc = 0;
    for (std::size_t s = n_.size(); s-- > 0;) t[s] = acc += n_[s];
    return t;
  }

  int total() const { return std::accumulate(n_.begin(), n_.end(), 0); }

  friend bool operator==(const HeightProfile&, const HeightProfile&) = default;
  friend auto operator<=>(const HeightProfile&, const HeightProfile&) = default;

 private:
  std::vector<int> n_;
};

enum class Family { main, star, star_star, ag, bressoud };

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::main: return "main";
    case Family::star: return "star";
    case Family::star_star: return "starstar";
    case Family::ag: return "ag";
    case Family::bressoud: return "bressoud";
  }
  return "?";
}

inline std::optional<Family> parse_family(std::string_view s) {
  for (Family f : {Family::main, Family::star, Family::star_star, Family::ag, Family::bressoud})
    if (s == to_string(f)) return f;
  if (s == "star_star") return Family::star_star;
  return std::nullopt;
}

inline void check_index(int ell, int i) {
  if (ell < 1) throw usage_error("ell must be >= 1");
  if (i < 0 || i > ell) throw usage_error("index must lie in 0..ell");
}

// Sum of N_s for s >= start (1-based); start > l gives 0.
inline long long tail_sum(std::span<const int> N, int start) {
  long long s = 0;
  for (int t = std::max(start, 1); t <= static_cast<int>(N.size()); ++t) s += N[t - 1];
  return s;
}

// Residue index a with 1 <= a <= l+1 paired with initial condition i.
inline int position_index(int ell, int i) {
  check_index(ell, i);
  return 2 * i <= ell ? 2 * i + 1 : 2 * (ell - i) + 2;
}

// Listing order of the main-family linear forms: i = 0, l, 1, l-1, 2, ...
// The t-th listed index (0-based) carries N_{t+1} + ... + N_l.
inline std::vector<int> main_listing_order(int ell) {
  std::vector<int> order;
  for (int lo = 0, hi = ell; lo <= hi; ++lo, --hi) {
    order.push_back(lo);
    if (hi != lo) order.push_back(hi);
  }
  return order;
}

inline long long ag_linear_form(int ell, int a, std::span<const int> N) {
  if (a < 1 || a > ell + 1) throw usage_error("residue index must lie in 1..ell+1");
  if (static_cast<int>(N.size()) != ell) throw usage_error("tail vector length != ell");
  return tail_sum(N, a);
}

inline long long linear_form(Family f, int ell, int i, std::span<const int> N) {
  check_index(ell, i);
  if (static_cast<int>(N.size()) != ell) throw usage_error("tail vector length != ell");
  switch (f) {
    case Family::main: {
      const auto order = main_listing_order(ell);
      const auto t = std::find(order.begin(), order.end(), i) - order.begin();
      return tail_sum(N, static_cast<int>(t) + 1);
    }
    case Family::star:
      return tail_sum(N, 2 * std::min(i, ell - i) + 1);
    case Family::star_star:
      return tail_sum(N, std::max(2 * std::min(i, ell + 1 - i), 1)) + (i == 0 ? N[0] : 0);
    case Family::ag:
    case Family::bressoud:
      break;
  }
  throw usage_error("linear_form covers main, star and starstar; use ag_linear_form");
}

// Coefficients c[j][n] of z^j q^n for j <= Z, n <= Q.
class BivariateSeries {
 public:
  BivariateSeries(int q_truncation, int z_truncation)
      : z_truncation_(z_truncation), rows_() {
    if (z_truncation < 0) throw usage_error("negative z truncation");
    rows_.assign(static_cast<std::size_t>(z_truncation) + 1, QPolynomial(q_truncation));
  }

  int q_truncation() const { return rows_.front().truncation(); }
  int z_truncation() const { return z_truncation_; }

  const QPolynomial& z_coefficient(int j) const { return rows_.at(static_cast<std::size_t>(j)); }
  const BigInt& coefficient(int j, int n) const { return z_coefficient(j)[n]; }

  // Adds z^j q^shift * p; silently drops j > Z (that is the truncation).
  void add_term(int j, int shift, const QPolynomial& p) {
    if (j < 0) throw usage_error("negative z power");
    if (j > z_truncation_) return;
    rows_[j] += p.shifted(shift);
  }

  QPolynomial at_z_one() const {
    QPolynomial s(q_truncation());
    for (const auto& r : rows_) s += r;
    return s;
  }

  BivariateSeries truncated(int q, int z) const {
    if (z > z_truncation_) throw usage_error("cannot raise z truncation");
    BivariateSeries out(q, z);
    for (int j = 0; j <= z; ++j) out.rows_[j] = rows_[j].truncated(q);
    return out;
  }

  bool nonnegative() const {
    for (const auto& r : rows_)
      for (const auto& c : r.coefficients())
        if (c < 0) return false;
    return true;
  }

  friend bool operator==(const BivariateSeries&, const BivariateSeries&) = default;

  // Rows "z_degree,q_degree,coefficient" for every nonzero coefficient.
  std::string to_csv() const {
    std::ostringstream os;
    os << "z_degree,q_degree,coefficient\n";
    for (int j = 0; j <= z_truncation_; ++j)
      for (int n = 0; n <= q_truncation(); ++n)
        if (rows_[j][n] != 0) os << j << ',' << n << ',' << rows_[j][n] << '\n';
    return os.str();
  }

 private:
  int z_truncation_;
  std::vector<QPolynomial> rows_;
};

// Generic multi-sum
//   sum over n_1..n_l >= 0 of z^{zp(N)} q^{sum N_s^2 + L(N)} / prod_s (q;q)_{n_s}
// with the last factor optionally (q^2;q^2)_{n_l}.
struct MultiSumSpec {
  int ell = 1;
  int q_truncation = 0;
  int z_truncation = 0;
  std::function<long long(std::span<const int>)> linear_form;
  std::function<int(std::span<const int>)> z_power;
  bool last_factor_q_squared = false;
};

inline BivariateSeries multisum_series(const MultiSumSpec& spec) {
  const int ell = spec.ell, Q = spec.q_truncation, Z = spec.z_truncation;
  if (ell < 1) throw usage_error("ell must be >= 1");
  BivariateSeries out(Q, Z);

  std::map<std::pair<int, int>, QPolynomial> inv_cache;
  auto inverse_poch = [&](int base, int n) -> const QPolynomial& {
    auto it = inv_cache.find({base, n});
    if (it == inv_cache.end())
      it = inv_cache.emplace(std::pair{base, n}, poly_inverse_unit(pochhammer(base, n, Q))).first;
    return it->second;
  };

  std::vector<int> n(static_cast<std::size_t>(ell), 0), N(static_cast<std::size_t>(ell), 0);
  // Choose n_l first so every N_s is fixed once its own n_s is chosen; the
  // partial quadratic then only grows and prunes the search.
  std::function<void(int, long long)> rec = [&](int s, long long quad) {
    if (s < 0) {
      const long long e = quad + spec.linear_form(N);
      const int zp = spec.z_power(N);
      if (e > Q || zp > Z) return;
      QPolynomial term = QPolynomial::one(Q);
      for (int t = 0; t < ell; ++t) {
        const int base = (spec.last_factor_q_squared && t == ell - 1) ? 2 : 1;
        if (n[t] > 0) term = poly_mul_truncated(term, inverse_poch(base, n[t]));
      }
      out.add_term(zp, static_cast<int>(e), term);
      return;
    }
    const int above = s + 1 < ell ? N[s + 1] : 0;
    for (int v = 0;; ++v) {
      const long long Ns = above + v;
      if (Ns > Z || quad + Ns * Ns > Q) break;
      n[s] = v;
      N[s] = static_cast<int>(Ns);
      rec(s - 1, quad + Ns * Ns);
    }
    n[s] = 0;
    N[s] = above;
  };
  rec(ell - 1, 0);
  return out;
}

// index is i for main/star/starstar and the residue a for ag/bressoud.
inline MultiSumSpec family_spec(Family f, int ell, int index, int Q, int Z) {
  MultiSumSpec spec;
  spec.ell = ell;
  spec.q_truncation = Q;
  spec.z_truncation = Z;
  switch (f) {
    case Family::main:
    case Family::star:
    case Family::star_star:
      check_index(ell, index);
      spec.linear_form = [=](std::span<const int> N) { return linear_form(f, ell, index, N); };
      spec.z_power = [](std::span<const int> N) { return N[0]; };
      spec.last_factor_q_squared = f != Family::main;
      break;
    case Family::ag:
    case Family::bressoud:
      if (ell < 1) throw usage_error("ell must be >= 1");
      if (index < 1 || index > ell + 1) throw usage_error("residue index must lie in 1..ell+1");
      spec.linear_form = [=](std::span<const int> N) { return ag_linear_form(ell, index, N); };
      spec.z_power = [](std::span<const int> N) { return std::accumulate(N.begin(), N.end(), 0); };
      spec.last_factor_q_squared = f == Family::bressoud;
      break;
  }
  return spec;
}

inline BivariateSeries series_for_family(Family f, int ell, int index, int Q, int Z) {
  return multisum_series(family_spec(f, ell, index, Q, Z));
}

// The bounded sum for P_0 with Gaussian-binomial factors
//   [ M - (2n_1 + 4n_2 + ... + 2s n_s) - 2(n_{s+1} + ... + n_l)  over  n_s ].
inline BivariateSeries bounded_p0_series(int ell, int M, int Q, int Z) {
  if (ell < 1) throw usage_error("ell must be >= 1");
  BivariateSeries out(Q, Z);
  std::vector<int> n(static_cast<std::size_t>(ell), 0), N(static_cast<std::size_t>(ell), 0);
  std::function<void(int, long long)> rec = [&](int s, long long quad) {
    if (s < 0) {
      const long long e = quad + std::accumulate(N.begin(), N.end(), 0LL);
      if (e > Q) return;
      QPolynomial term = QPolynomial::one(Q);
      long long weighted = 0;
      for (int t = 0; t < ell; ++t) {
        weighted += 2LL * (t + 1) * n[t];
        const long long rest = t + 1 < ell ? N[t + 1] : 0;
        const long long top = M - weighted - 2 * rest;
        if (top < n[t]) return;  // the Gaussian factor vanishes
        if (n[t] > 0) term = poly_mul_truncated(term, gaussian_binomial(static_cast<int>(top), n[t], Q));
      }
      out.add_term(N[0], static_cast<int>(e), term);
      return;
    }
    const int above = s + 1 < ell ? N[s + 1] : 0;
    for (int v = 0;; ++v) {
      const long long Ns = above + v;
      if (Ns > Z || quad + Ns * Ns > Q) break;
      n[s] = v;
      N[s] = static_cast<int>(Ns);
      rec(s - 1, quad + Ns * Ns);
    }
    n[s] = 0;
    N[s] = above;
  };
  rec(ell - 1, 0);
  return out;
}

}  // namespace cmpp
