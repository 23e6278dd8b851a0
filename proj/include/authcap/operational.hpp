#pragma once

#include <cstdint>

#include "authcap/code.hpp"

namespace authcap {

inline constexpr std::uint64_t kEnumerationBudget = 100000000ull;  // elementary ops

namespace detail {

inline std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > kEnumerationBudget * 16) return r;  // saturate, caller checks budget
    r *= b;
  }
  return r;
}

}  // namespace detail

// Exact single-round probability of message error: average over message, key,
// encoder randomness and channel of the event that the decoder does not
// return the sent message.
inline Rational epsilon_exact(const CodeView& view, const RationalKernel& t,
                              int round = 0) {
  const std::uint64_t y_space = detail::ipow(t.out_size, view.n);
  if (y_space * view.key_count * view.message_count > kEnumerationBudget)
    throw BudgetExceeded("epsilon_exact: enumeration budget exceeded");

  Rational correct = 0;
  for (std::uint64_t m = 0; m < view.message_count; ++m)
    for (std::uint64_t k = 0; k < view.key_count; ++k) {
      const auto supp = view.support(round, m, k);
      Rational acc = 0;
      for (std::uint64_t yi = 0; yi < y_space; ++yi) {
        if (view.decode(round, yi, k) != static_cast<long long>(m)) continue;
        const Seq y = index_to_seq(yi, view.n, t.out_size);
        for (std::uint64_t xi : supp)
          acc += t.seq_prob(y, index_to_seq(xi, view.n, view.x_alphabet));
      }
      correct += acc / Rational(static_cast<BigInt>(supp.size()));
    }
  correct /= Rational(BigInt(view.message_count) * BigInt(view.key_count));
  return 1 - correct;
}

struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::uint64_t samples = 0;
};

// Seeded Monte Carlo fallback for instances past the enumeration budget.
inline McEstimate epsilon_mc(const CodeView& view, const CondDist& t, int round,
                             std::uint64_t samples, std::uint64_t seed) {
  auto g = stream(seed, "operational/epsilon_mc");
  std::uint64_t errors = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const std::uint64_t m = uniform_below(g, view.message_count);
    const std::uint64_t k = uniform_below(g, view.key_count);
    const auto supp = view.support(round, m, k);
    const Seq x = index_to_seq(supp[uniform_below(g, supp.size())], view.n,
                               view.x_alphabet);
    Seq y(view.n);
    for (int i = 0; i < view.n; ++i) {
      // inverse-CDF draw with a 53-bit uniform
      const double r = double(g() >> 11) * 0x1.0p-53;
      double cum = 0.0;
      int sym = static_cast<int>(t.out_size()) - 1;
      for (std::size_t yv = 0; yv < t.out_size(); ++yv) {
        cum += t(yv, x[i]);
        if (r < cum) {
          sym = static_cast<int>(yv);
          break;
        }
      }
      y[i] = sym;
    }
    if (view.decode(round, seq_to_index(y, static_cast<int>(t.out_size())), k) !=
        static_cast<long long>(m))
      ++errors;
  }
  McEstimate est;
  est.samples = samples;
  est.mean = double(errors) / double(samples);
  est.stderr_ = std::sqrt(est.mean * (1.0 - est.mean) / double(samples));
  return est;
}

// Exact worst-case expected false-authentication probability for round i of j:
// the maximum over adversary maps of the probability that a substituted y is
// accepted as some message other than the one sent. A deterministic map
// attains the maximum (the objective is linear in the map), so the enumerator
// takes, for every observation history, the y with the largest acceptance
// mass over wrong messages.
inline Rational omega_exact(const CodeView& view, const RationalKernel& q,
                            int round_i, int rounds) {
  if (round_i < 1 || round_i > rounds)
    throw std::invalid_argument("omega_exact: round out of range");
  const std::uint64_t z_space = detail::ipow(q.out_size, view.n);
  const std::uint64_t y_space = detail::ipow(view.y_alphabet, view.n);
  double history = 1.0;
  for (int l = 0; l < round_i; ++l) history *= double(z_space);
  if (history * double(y_space) * double(view.key_count) > double(kEnumerationBudget) ||
      z_space * view.key_count * view.message_count > kEnumerationBudget)
    throw BudgetExceeded("omega_exact: enumeration budget exceeded");

  const std::uint64_t M = view.message_count, K = view.key_count;

  // A[l][k][z][m]: probability of adversary observation z in round l given
  // (m, k); B[l][k][z]: the same averaged over the round's message.
  std::vector<std::vector<std::vector<std::vector<Rational>>>> A(round_i);
  std::vector<std::vector<std::vector<Rational>>> B(round_i);
  for (int l = 0; l < round_i; ++l) {
    A[l].assign(K, std::vector<std::vector<Rational>>(z_space,
                                                      std::vector<Rational>(M, 0)));
    B[l].assign(K, std::vector<Rational>(z_space, 0));
    for (std::uint64_t k = 0; k < K; ++k)
      for (std::uint64_t m = 0; m < M; ++m) {
        const auto supp = view.support(l, m, k);
        const Rational inv(BigInt(1), BigInt(supp.size()));
        for (std::uint64_t zi = 0; zi < z_space; ++zi) {
          const Seq z = index_to_seq(zi, view.n, q.out_size);
          Rational p = 0;
          for (std::uint64_t xi : supp)
            p += q.seq_prob(z, index_to_seq(xi, view.n, view.x_alphabet));
          A[l][k][zi][m] = p * inv;
          B[l][k][zi] += A[l][k][zi][m];
        }
      }
    for (std::uint64_t k = 0; k < K; ++k)
      for (std::uint64_t zi = 0; zi < z_space; ++zi)
        B[l][k][zi] /= Rational(BigInt(M));
  }

  // acceptance mass of wrong messages in round i, per (z, k, y)
  const int li = round_i - 1;
  std::vector<std::vector<Rational>> a_total(K, std::vector<Rational>(z_space, 0));
  for (std::uint64_t k = 0; k < K; ++k)
    for (std::uint64_t zi = 0; zi < z_space; ++zi)
      for (std::uint64_t m = 0; m < M; ++m) a_total[k][zi] += A[li][k][zi][m];

  std::vector<long long> dec(y_space * K);
  for (std::uint64_t yi = 0; yi < y_space; ++yi)
    for (std::uint64_t k = 0; k < K; ++k) dec[yi * K + k] = view.decode(li, yi, k);

  // enumerate histories z^{i-1}, carrying the per-key prefix weight
  Rational total = 0;
  std::vector<std::uint64_t> hist(round_i - 1, 0);
  std::vector<std::vector<Rational>> prefix(round_i);
  prefix[0].assign(K, Rational(1));
  int level = 0;
  while (true) {
    if (level == round_i - 1) {
      const auto& wk = prefix[level];
      for (std::uint64_t zi = 0; zi < z_space; ++zi) {
        Rational best = 0;
        for (std::uint64_t yi = 0; yi < y_space; ++yi) {
          Rational acc = 0;
          for (std::uint64_t k = 0; k < K; ++k) {
            const long long d = dec[yi * K + k];
            if (d < 0) continue;
            acc += wk[k] * (a_total[k][zi] - A[li][k][zi][static_cast<std::uint64_t>(d)]);
          }
          if (acc > best) best = acc;
        }
        total += best;
      }
      // backtrack
      while (level > 0 && hist[level - 1] + 1 == z_space) --level;
      if (level == 0) break;
      ++hist[level - 1];
      const std::uint64_t z = hist[level - 1];
      prefix[level] = prefix[level - 1];
      for (std::uint64_t k = 0; k < K; ++k) prefix[level][k] *= B[level - 1][k][z];
      continue;
    }
    hist[level] = 0;
    prefix[level + 1] = prefix[level];
    for (std::uint64_t k = 0; k < K; ++k) prefix[level + 1][k] *= B[level][k][0];
    ++level;
  }

  return total / Rational(BigInt(K) * BigInt(M));
}

}  // namespace authcap
