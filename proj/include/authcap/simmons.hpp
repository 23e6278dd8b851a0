#pragma once

#include <cstdint>

#include "authcap/rng.hpp"
#include "authcap/types.hpp"

namespace authcap {

// The noiseless keyed-subset scheme: each key selects a random subset of the
// sequence space, half the key exponent is traded for substitution resistance.
struct SimmonsParams {
  int n = 0;
  int alphabet = 2;
  std::uint64_t key_count = 1;

  std::uint64_t space_size() const {
    std::uint64_t s = 1;
    for (int i = 0; i < n; ++i) s *= static_cast<std::uint64_t>(alphabet);
    return s;
  }

  // |X(k)| = |X|^n / sqrt(|K|); the square root must be an integer divisor.
  std::uint64_t message_count() const {
    std::uint64_t root = static_cast<std::uint64_t>(std::llround(std::sqrt(double(key_count))));
    if (root * root != key_count)
      throw std::invalid_argument("SimmonsParams: key count is not a perfect square");
    const std::uint64_t space = space_size();
    if (space % root != 0)
      throw std::invalid_argument("SimmonsParams: sqrt(|K|) does not divide |X|^n");
    return space / root;
  }
};

struct SimmonsCode {
  SimmonsParams params;
  // codeword[k][m] = index of the sequence representing message m under key k
  std::vector<std::vector<std::uint64_t>> codeword;
};

inline SimmonsCode build_simmons(const SimmonsParams& params, std::uint64_t seed) {
  const std::uint64_t m_count = params.message_count();
  const std::uint64_t space = params.space_size();
  if (m_count < 1) throw std::invalid_argument("build_simmons: empty message set");
  SimmonsCode code{params, {}};
  code.codeword.reserve(params.key_count);
  auto g = stream(seed, "simmons/build");
  for (std::uint64_t k = 0; k < params.key_count; ++k)
    code.codeword.push_back(sample_distinct(g, space, m_count));
  return code;
}

namespace detail {

inline std::vector<std::vector<std::uint64_t>> keys_containing(const SimmonsCode& code) {
  std::vector<std::vector<std::uint64_t>> byseq(code.params.space_size());
  for (std::uint64_t k = 0; k < code.codeword.size(); ++k)
    for (std::uint64_t x : code.codeword[k]) byseq[x].push_back(k);
  return byseq;
}

}  // namespace detail

// Exact success probability of the optimal substitution attack: the adversary
// sees the transmitted sequence, conditions on the keys consistent with it,
// and substitutes the x' != x most likely to be valid. Averaged over message
// and key.
inline Rational simmons_substitution_success(const SimmonsCode& code) {
  const auto byseq = detail::keys_containing(code);
  const std::uint64_t space = code.params.space_size();
  BigInt numer = 0;
  for (std::uint64_t x = 0; x < space; ++x) {
    if (byseq[x].empty()) continue;
    std::uint64_t best = 0;
    for (std::uint64_t xp = 0; xp < space; ++xp) {
      if (xp == x) continue;
      // |{k : x in X(k), x' in X(k)}| via sorted-list intersection
      std::uint64_t both = 0;
      std::size_t i = 0, j = 0;
      const auto& a = byseq[x];
      const auto& b = byseq[xp];
      while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
          ++both;
          ++i;
          ++j;
        } else if (a[i] < b[j]) {
          ++i;
        } else {
          ++j;
        }
      }
      best = std::max(best, both);
    }
    numer += best;
  }
  return Rational(numer, BigInt(code.params.key_count) *
                             BigInt(code.codeword[0].size()));
}

// Exact success probability of the blind attack: inject the sequence valid
// under the most keys, without observing the transmission. Success requires a
// false message, so the event that the injected sequence happens to encode
// the true message is excluded.
inline Rational simmons_impersonation_success(const SimmonsCode& code) {
  const auto byseq = detail::keys_containing(code);
  std::size_t best = 0;
  for (const auto& keys : byseq) best = std::max(best, keys.size());
  const std::uint64_t m_count = code.codeword[0].size();
  return Rational(BigInt(best) * BigInt(m_count - 1),
                  BigInt(code.params.key_count) * BigInt(m_count));
}

}  // namespace authcap
