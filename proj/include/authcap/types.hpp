#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <vector>

#include "authcap/info.hpp"
#include "authcap/project.hpp"
#include "authcap/prob.hpp"

namespace authcap {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using Seq = std::vector<int>;  // symbols from {0, ..., k-1}

inline std::uint64_t seq_to_index(const Seq& s, int k) {
  std::uint64_t idx = 0;
  for (int v : s) idx = idx * static_cast<std::uint64_t>(k) + static_cast<std::uint64_t>(v);
  return idx;
}

inline Seq index_to_seq(std::uint64_t idx, int n, int k) {
  Seq s(n);
  for (int i = n - 1; i >= 0; --i) {
    s[i] = static_cast<int>(idx % k);
    idx /= k;
  }
  return s;
}

// Interleaves two equal-length sequences into one over the product alphabet,
// pair (a,b) -> a*kb + b.
inline Seq pair_sequence(const Seq& a, const Seq& b, int kb) {
  if (a.size() != b.size()) throw std::invalid_argument("pair_sequence: length mismatch");
  Seq out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * kb + b[i];
  return out;
}

// Empirical distribution with denominator n: integer counts summing to n.
struct NType {
  int n = 0;
  std::vector<int> counts;

  NType() = default;
  NType(int n_in, std::vector<int> c) : n(n_in), counts(std::move(c)) {
    int sum = 0;
    for (int v : counts) {
      if (v < 0) throw std::invalid_argument("NType: negative count");
      sum += v;
    }
    if (sum != n || n <= 0) throw std::invalid_argument("NType: counts do not sum to n");
  }

  int alphabet() const { return static_cast<int>(counts.size()); }
  Dist dist() const {
    std::vector<double> p(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) p[i] = double(counts[i]) / double(n);
    return Dist(std::move(p));
  }
  bool operator==(const NType& o) const { return n == o.n && counts == o.counts; }
};

// Conditional empirical distribution: counts(a,b) of output b at positions
// where the conditioning sequence shows a. Row sums give the conditioning type.
struct CondNType {
  int n = 0;
  int in_size = 0, out_size = 0;
  std::vector<int> counts;  // row-major, in x out

  CondNType() = default;
  CondNType(int n_in, int in_sz, int out_sz, std::vector<int> c)
      : n(n_in), in_size(in_sz), out_size(out_sz), counts(std::move(c)) {
    if (in_size <= 0 || out_size <= 0 ||
        counts.size() != static_cast<std::size_t>(in_size) * out_size)
      throw std::invalid_argument("CondNType: bad dimensions");
    int sum = 0;
    for (int v : counts) {
      if (v < 0) throw std::invalid_argument("CondNType: negative count");
      sum += v;
    }
    if (sum != n || n <= 0)
      throw std::invalid_argument("CondNType: counts do not sum to n");
  }

  int at(int a, int b) const { return counts[a * out_size + b]; }
  int& at(int a, int b) { return counts[a * out_size + b]; }

  NType conditioning() const {
    std::vector<int> c(in_size, 0);
    for (int a = 0; a < in_size; ++a)
      for (int b = 0; b < out_size; ++b) c[a] += at(a, b);
    return NType(n, std::move(c));
  }

  std::vector<int> output_counts() const {
    std::vector<int> c(out_size, 0);
    for (int a = 0; a < in_size; ++a)
      for (int b = 0; b < out_size; ++b) c[b] += at(a, b);
    return c;
  }

  // Rows with an empty conditioning count get a uniform row so the kernel is
  // a valid CondDist; such rows never receive weight.
  CondDist kernel() const {
    std::vector<double> flat(static_cast<std::size_t>(in_size) * out_size);
    for (int a = 0; a < in_size; ++a) {
      int na = 0;
      for (int b = 0; b < out_size; ++b) na += at(a, b);
      for (int b = 0; b < out_size; ++b)
        flat[a * out_size + b] = na > 0 ? double(at(a, b)) / double(na)
                                        : 1.0 / double(out_size);
    }
    return CondDist(in_size, out_size, std::move(flat));
  }

  // Empirical analogue of the one-to-one reachability property: each output
  // symbol has positive count under at most one conditioning symbol.
  bool deterministic_over_conditioning() const {
    for (int b = 0; b < out_size; ++b) {
      int positive = 0;
      for (int a = 0; a < in_size; ++a)
        if (at(a, b) > 0) ++positive;
      if (positive > 1) return false;
    }
    return true;
  }

  bool operator==(const CondNType& o) const {
    return n == o.n && in_size == o.in_size && out_size == o.out_size &&
           counts == o.counts;
  }
};

inline NType empirical(const Seq& x, int k) {
  std::vector<int> c(k, 0);
  for (int v : x) {
    if (v < 0 || v >= k) throw std::invalid_argument("empirical: symbol out of range");
    ++c[v];
  }
  return NType(static_cast<int>(x.size()), std::move(c));
}

inline CondNType empirical_cond(const Seq& y, int ky, const Seq& x, int kx) {
  if (y.size() != x.size())
    throw std::invalid_argument("empirical_cond: length mismatch");
  std::vector<int> c(static_cast<std::size_t>(kx) * ky, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0 || x[i] >= kx || y[i] < 0 || y[i] >= ky)
      throw std::invalid_argument("empirical_cond: symbol out of range");
    ++c[x[i] * ky + y[i]];
  }
  return CondNType(static_cast<int>(x.size()), kx, ky, std::move(c));
}

// Exact value of a decimal literal such as "0.25" or "1e-3".
inline Rational parse_decimal(const std::string& s) {
  std::size_t pos = 0;
  bool neg = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) neg = s[pos++] == '-';
  BigInt digits = 0;
  long long frac_len = 0, exponent = 0;
  bool any = false, in_frac = false;
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      if (in_frac) ++frac_len;
      any = true;
    } else if (c == '.' && !in_frac) {
      in_frac = true;
    } else if (c == 'e' || c == 'E') {
      exponent = std::stoll(s.substr(pos + 1));
      pos = s.size() - 1;
    } else {
      throw std::invalid_argument("parse_decimal: bad literal '" + s + "'");
    }
  }
  if (!any) throw std::invalid_argument("parse_decimal: bad literal '" + s + "'");
  Rational r(digits);
  long long shift = exponent - frac_len;
  BigInt ten = 1;
  for (long long i = 0; i < std::abs(shift); ++i) ten *= 10;
  if (shift >= 0)
    r *= Rational(ten);
  else
    r /= Rational(ten);
  return neg ? -r : r;
}

inline BigInt binomial_exact(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

inline BigInt multinomial_exact(int n, const std::vector<int>& parts) {
  BigInt r = 1;
  int rest = n;
  for (int p : parts) {
    r *= binomial_exact(rest, p);
    rest -= p;
  }
  if (rest != 0) throw std::invalid_argument("multinomial_exact: parts do not sum to n");
  return r;
}

inline double log2_exact(const BigInt& x) {
  if (x <= 0) throw std::invalid_argument("log2_exact: nonpositive argument");
  const std::size_t bits = boost::multiprecision::msb(x);
  if (bits <= 62) return std::log2(x.convert_to<double>());
  const std::size_t shift = bits - 52;
  const BigInt top = x >> shift;
  return std::log2(top.convert_to<double>()) + static_cast<double>(shift);
}

inline BigInt type_class_size(const NType& t) {
  return multinomial_exact(t.n, t.counts);
}

inline BigInt type_class_size(const CondNType& mu) {
  BigInt r = 1;
  for (int a = 0; a < mu.in_size; ++a) {
    std::vector<int> row(mu.out_size);
    int na = 0;
    for (int b = 0; b < mu.out_size; ++b) {
      row[b] = mu.at(a, b);
      na += row[b];
    }
    r *= multinomial_exact(na, row);
  }
  return r;
}

inline BigInt type_class_size(const CondNType& mu, const Seq& x) {
  if (!(empirical(x, mu.in_size) == mu.conditioning()))
    throw std::invalid_argument("type_class_size: x does not match the conditioning type");
  return type_class_size(mu);
}

// All n-types over an alphabet of k symbols, first count descending.
inline std::vector<NType> enumerate_ntypes(int n, int k,
                                           std::size_t budget = 10000000) {
  const BigInt total = binomial_exact(n + k - 1, k - 1);
  if (total > budget) throw BudgetExceeded("enumerate_ntypes: too many types");
  std::vector<NType> out;
  std::vector<int> c(k, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == k - 1) {
      c[pos] = left;
      out.emplace_back(n, c);
      return;
    }
    for (int v = left; v >= 0; --v) {
      c[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, n);
  return out;
}

// All conditional n-types with a given conditioning type.
inline std::vector<CondNType> enumerate_cond_ntypes(const NType& cond, int out_k,
                                                    std::size_t budget = 10000000) {
  const int kin = cond.alphabet();
  BigInt total = 1;
  for (int a = 0; a < kin; ++a) total *= binomial_exact(cond.counts[a] + out_k - 1, out_k - 1);
  if (total > budget) throw BudgetExceeded("enumerate_cond_ntypes: too many types");

  std::vector<std::vector<std::vector<int>>> per_row(kin);
  for (int a = 0; a < kin; ++a) {
    std::vector<int> c(out_k, 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
      if (pos == out_k - 1) {
        c[pos] = left;
        per_row[a].push_back(c);
        return;
      }
      for (int v = left; v >= 0; --v) {
        c[pos] = v;
        self(self, pos + 1, left - v);
      }
    };
    rec(rec, 0, cond.counts[a]);
  }

  std::vector<CondNType> out;
  std::vector<std::size_t> idx(kin, 0);
  while (true) {
    std::vector<int> flat(static_cast<std::size_t>(kin) * out_k);
    for (int a = 0; a < kin; ++a)
      for (int b = 0; b < out_k; ++b) flat[a * out_k + b] = per_row[a][idx[a]][b];
    out.emplace_back(cond.n, kin, out_k, std::move(flat));
    int pos = kin - 1;
    while (pos >= 0 && ++idx[pos] == per_row[pos].size()) idx[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

// All sequences whose empirical distribution equals t, lexicographic.
inline std::vector<Seq> sequences_of_type(const NType& t,
                                          std::size_t budget = 10000000) {
  if (type_class_size(t) > budget)
    throw BudgetExceeded("sequences_of_type: class too large");
  std::vector<Seq> out;
  Seq cur(t.n);
  std::vector<int> left = t.counts;
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == t.n) {
      out.push_back(cur);
      return;
    }
    for (int s = 0; s < t.alphabet(); ++s) {
      if (left[s] == 0) continue;
      --left[s];
      cur[pos] = s;
      self(self, pos + 1);
      ++left[s];
    }
  };
  rec(rec, 0);
  return out;
}

// All y with p_{y|x} = mu, for the given conditioning sequence x.
inline std::vector<Seq> sequences_of_cond_type(const CondNType& mu, const Seq& x,
                                               std::size_t budget = 10000000) {
  if (!(empirical(x, mu.in_size) == mu.conditioning()))
    throw std::invalid_argument("sequences_of_cond_type: conditioning mismatch");
  if (type_class_size(mu) > budget)
    throw BudgetExceeded("sequences_of_cond_type: class too large");
  const int n = static_cast<int>(x.size());
  std::vector<Seq> out;
  Seq cur(n);
  std::vector<int> left = mu.counts;
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == n) {
      out.push_back(cur);
      return;
    }
    const int a = x[pos];
    for (int b = 0; b < mu.out_size; ++b) {
      int& l = left[a * mu.out_size + b];
      if (l == 0) continue;
      --l;
      cur[pos] = b;
      self(self, pos + 1);
      ++l;
    }
  };
  rec(rec, 0);
  return out;
}

// -(1/n) log2 of the product-channel probability of y given x.
inline double seq_prob_log(const CondDist& t, const Seq& y, const Seq& x) {
  if (y.size() != x.size()) throw std::invalid_argument("seq_prob_log: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double p = t(static_cast<std::size_t>(y[i]), static_cast<std::size_t>(x[i]));
    if (p == 0.0) return kInf;
    acc -= std::log2(p);
  }
  return acc / static_cast<double>(y.size());
}

// -(1/n) log2 of the probability that the channel output lands in T_mu(x),
// computed exactly as class size times the common per-sequence probability.
inline double typeclass_prob_log(const CondDist& t, const CondNType& mu, const Seq& x) {
  if (!(empirical(x, mu.in_size) == mu.conditioning()))
    throw std::invalid_argument("typeclass_prob_log: conditioning mismatch");
  double log_prob = log2_exact(type_class_size(mu));
  for (int a = 0; a < mu.in_size; ++a)
    for (int b = 0; b < mu.out_size; ++b) {
      const int c = mu.at(a, b);
      if (c == 0) continue;
      const double p = t(b, a);
      if (p == 0.0) return kInf;
      log_prob += c * std::log2(p);
    }
  return -log_prob / static_cast<double>(mu.n);
}

// Whether z lies in the type class of the composed kernel nu*sigma given w.
// When z is nu-typical with some u that is sigma-typical with w and sigma has
// the one-to-one reachability property, this is guaranteed to hold.
inline bool chain_membership(const CondNType& nu, const CondNType& sigma,
                             const Seq& z, const Seq& w) {
  const NType u_counts_from_sigma(sigma.n, sigma.output_counts());
  if (!(nu.conditioning() == u_counts_from_sigma))
    throw std::invalid_argument("chain_membership: nu/sigma conditioning mismatch");
  if (!(empirical(w, sigma.in_size) == sigma.conditioning()))
    throw std::invalid_argument("chain_membership: w does not match sigma");
  const CondNType zw = empirical_cond(z, nu.out_size, w, sigma.in_size);
  const NType nu_cond = nu.conditioning();
  for (int a = 0; a < sigma.in_size; ++a) {
    int na = 0;
    for (int b = 0; b < sigma.out_size; ++b) na += sigma.at(a, b);
    for (int c = 0; c < nu.out_size; ++c) {
      // composed(c|a) = sum_b nu(c|b) sigma(b|a), compared exactly
      Rational composed = 0;
      for (int b = 0; b < sigma.out_size; ++b) {
        if (sigma.at(a, b) == 0) continue;
        if (nu_cond.counts[b] == 0) continue;
        composed += Rational(nu.at(b, c), nu_cond.counts[b]) * Rational(sigma.at(a, b), na);
      }
      if (na == 0) continue;
      if (Rational(zw.at(a, c), na) != composed) return false;
    }
  }
  return true;
}

inline bool chain_membership(const Seq& z, const Seq& u, const Seq& w, int kz,
                             int ku, int kw) {
  return chain_membership(empirical_cond(z, kz, u, ku),
                          empirical_cond(u, ku, w, kw), z, w);
}

// Pr(y in T_mu(U)) for U uniform over T_sigma(w), as an exact rational. The
// chained-membership structure turns the count of qualifying u into a single
// conditional type class over the pair sequence (y, w), so the probability is
// a ratio of two class sizes. Outside T_{mu sigma}(w) the probability is 0.
inline Rational membership_prob(const CondNType& mu, const CondNType& sigma,
                                const NType& tau, const Seq& w, const Seq& y) {
  if (!sigma.deterministic_over_conditioning())
    throw std::invalid_argument("membership_prob: sigma lacks the one-to-one property");
  if (!(sigma.conditioning() == tau))
    throw std::invalid_argument("membership_prob: sigma/tau mismatch");
  if (!(empirical(w, sigma.in_size) == tau))
    throw std::invalid_argument("membership_prob: w does not match tau");
  const NType u_counts(sigma.n, sigma.output_counts());
  if (!(mu.conditioning() == u_counts))
    throw std::invalid_argument("membership_prob: mu/sigma conditioning mismatch");
  if (static_cast<int>(y.size()) != mu.n)
    throw std::invalid_argument("membership_prob: y length mismatch");

  const int ku = sigma.out_size, kw = sigma.in_size, kyy = mu.out_size;
  const CondNType yw = empirical_cond(y, kyy, w, kw);

  // membership pre-check: the joint (y,w) counts must match mu*sigma
  for (int a = 0; a < kw; ++a)
    for (int c = 0; c < kyy; ++c) {
      Rational expect = 0;
      for (int b = 0; b < ku; ++b) {
        if (sigma.at(a, b) == 0 || u_counts.counts[b] == 0) continue;
        expect += Rational(static_cast<long long>(sigma.at(a, b)) * mu.at(b, c),
                           u_counts.counts[b]);
      }
      if (Rational(yw.at(a, c)) != expect) return Rational(0);
    }

  // per conditioning pair (c,a), u-counts K(b) = sigma(a,b) * mu(b,c) / n_b
  BigInt numer = 1;
  for (int a = 0; a < kw; ++a)
    for (int c = 0; c < kyy; ++c) {
      const int pair_count = yw.at(a, c);
      if (pair_count == 0) continue;
      std::vector<int> parts(ku, 0);
      for (int b = 0; b < ku; ++b) {
        if (sigma.at(a, b) == 0) continue;
        const long long num = static_cast<long long>(sigma.at(a, b)) * mu.at(b, c);
        if (num % u_counts.counts[b] != 0)
          throw std::logic_error("membership_prob: non-integral pair type");
        parts[b] = static_cast<int>(num / u_counts.counts[b]);
      }
      numer *= multinomial_exact(pair_count, parts);
    }
  return Rational(numer, type_class_size(sigma));
}

// The conditional type of u given the pair (y, w) induced by (mu, sigma):
// counts K((c,a), b) = sigma(a,b) mu(b,c) / n_b, integral whenever sigma has
// the one-to-one property. Conditioning pairs flatten as c * |W| + a, matching
// pair_sequence(y, w, |W|).
inline CondNType pair_conditional_type(const CondNType& mu, const CondNType& sigma) {
  const NType u_counts(sigma.n, sigma.output_counts());
  if (!(mu.conditioning() == u_counts))
    throw std::invalid_argument("pair_conditional_type: mu/sigma conditioning mismatch");
  const int kw = sigma.in_size, ku = sigma.out_size, kyy = mu.out_size;
  std::vector<int> counts(static_cast<std::size_t>(kyy) * kw * ku, 0);
  for (int c = 0; c < kyy; ++c)
    for (int a = 0; a < kw; ++a)
      for (int b = 0; b < ku; ++b) {
        if (sigma.at(a, b) == 0) continue;
        const long long num = static_cast<long long>(sigma.at(a, b)) * mu.at(b, c);
        if (num == 0) continue;
        if (num % u_counts.counts[b] != 0)
          throw std::invalid_argument("pair_conditional_type: non-integral counts");
        counts[(c * kw + a) * ku + b] = static_cast<int>(num / u_counts.counts[b]);
      }
  return CondNType(mu.n, kyy * kw, ku, std::move(counts));
}

// Restriction of the I-projection to joint n-types: exhaustive minimization of
// D(zeta || t x rho | sigma) over integer contingency tables with the
// prescribed margins, independently per conditioning symbol.
inline double fn_project(const CondNType& mu, const CondDist& t,
                         const CondNType& rho, const NType& sigma_tau,
                         std::size_t budget = 10000000) {
  if (mu.n != rho.n || mu.n != sigma_tau.n)
    throw std::invalid_argument("fn_project: mismatched n");
  if (!(mu.conditioning() == sigma_tau) || !(rho.conditioning() == sigma_tau))
    throw std::invalid_argument("fn_project: conditioning mismatch");
  if (t.in_size() != static_cast<std::size_t>(rho.out_size) ||
      t.out_size() != static_cast<std::size_t>(mu.out_size))
    throw std::invalid_argument("fn_project: channel alphabet mismatch");

  const int ny = mu.out_size, nx = rho.out_size;
  std::size_t tables_visited = 0;
  double total = 0.0;

  for (int u = 0; u < sigma_tau.alphabet(); ++u) {
    const int nu_count = sigma_tau.counts[u];
    if (nu_count == 0) continue;
    std::vector<int> row_target(ny), col_target(nx);
    for (int y = 0; y < ny; ++y) row_target[y] = mu.at(u, y);
    for (int x = 0; x < nx; ++x) col_target[x] = rho.at(u, x);

    double best = kInf;
    std::vector<int> cell(static_cast<std::size_t>(ny) * nx, 0);
    std::vector<int> col_left = col_target;

    auto eval = [&]() {
      double d = 0.0;
      for (int y = 0; y < ny && d != kInf; ++y)
        for (int x = 0; x < nx; ++x) {
          const int c = cell[y * nx + x];
          if (c == 0) continue;
          const double ref = t(y, x) * (double(col_target[x]) / double(nu_count));
          if (ref == 0.0) {
            d = kInf;
            break;
          }
          const double zc = double(c) / double(nu_count);
          d += zc * std::log2(zc / ref);
        }
      if (d < best) best = d;
      if (++tables_visited > budget)
        throw BudgetExceeded("fn_project: joint type budget exceeded");
    };

    // fill row y left to right; v bounded so the remaining cells stay feasible
    auto rec = [&](auto&& self, int y, int x, int row_left) -> void {
      if (y == ny) {
        eval();
        return;
      }
      if (x == nx) {
        const int next = y + 1;
        self(self, next, 0, next < ny ? row_target[next] : 0);
        return;
      }
      int tail = 0;
      for (int xx = x + 1; xx < nx; ++xx) tail += col_left[xx];
      const int lo = std::max(0, row_left - tail);
      const int hi = std::min(row_left, col_left[x]);
      for (int v = lo; v <= hi; ++v) {
        cell[y * nx + x] = v;
        col_left[x] -= v;
        self(self, y, x + 1, row_left - v);
        col_left[x] += v;
      }
      cell[y * nx + x] = 0;
    };
    rec(rec, 0, 0, row_target[0]);

    if (best == kInf) return kInf;
    total += (double(nu_count) / double(sigma_tau.n)) * best;
  }
  return total;
}

}  // namespace authcap
