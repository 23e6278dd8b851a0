#pragma once

#include <random>

#include "authcap/prob.hpp"

namespace testutil {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double unit(std::mt19937_64& g) {
  return double(g() >> 11) * 0x1.0p-53;
}

inline authcap::Dist random_dist(std::mt19937_64& g, std::size_t k,
                                 double floor = 0.0) {
  std::vector<double> v(k);
  double sum = 0.0;
  for (auto& x : v) {
    x = floor + unit(g);
    sum += x;
  }
  for (auto& x : v) x /= sum;
  return authcap::Dist(std::move(v));
}

inline authcap::CondDist random_kernel(std::mt19937_64& g, std::size_t in,
                                       std::size_t out, double floor = 0.0) {
  std::vector<authcap::Dist> rows;
  rows.reserve(in);
  for (std::size_t i = 0; i < in; ++i) rows.push_back(random_dist(g, out, floor));
  return authcap::CondDist(std::move(rows));
}

}  // namespace testutil
