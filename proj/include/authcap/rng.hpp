#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace authcap {

// Seedable streams with stable output across platforms. mt19937_64 output is
// fully specified by the standard; std::uniform_int_distribution is not, so
// bounded draws are done by rejection below.
inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// One generator per (seed, purpose label), e.g. stream(7, "simmons/build").
inline std::mt19937_64 stream(std::uint64_t seed, std::string_view label) {
  return std::mt19937_64(splitmix64(seed ^ fnv1a(label)));
}

// Uniform draw from {0, ..., n-1} by rejection; identical on every platform.
inline std::uint64_t uniform_below(std::mt19937_64& g, std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
  std::uint64_t v = g();
  while (v >= limit) v = g();
  return v % n;
}

template <typename T>
void shuffle_stable(std::vector<T>& v, std::mt19937_64& g) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_below(g, i));
    std::swap(v[i - 1], v[j]);
  }
}

// k distinct values from {0, ..., n-1}, in random order (partial Fisher-Yates).
inline std::vector<std::uint64_t> sample_distinct(std::mt19937_64& g,
                                                  std::uint64_t n,
                                                  std::uint64_t k) {
  std::vector<std::uint64_t> pool(n);
  for (std::uint64_t i = 0; i < n; ++i) pool[i] = i;
  std::vector<std::uint64_t> out;
  out.reserve(k);
  for (std::uint64_t i = 0; i < k; ++i) {
    std::uint64_t j = i + uniform_below(g, n - i);
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  return out;
}

}  // namespace authcap
