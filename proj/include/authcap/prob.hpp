#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace authcap {

inline constexpr double kSumTolerance = 1e-12;   // invariant after construction
inline constexpr double kRenormDrift = 1e-9;     // larger drift is rejected

// Finite probability vector over symbols {0, ..., size-1}.
class Dist {
 public:
  Dist() = default;

  explicit Dist(std::vector<double> mass) : p_(std::move(mass)) {
    if (p_.empty()) throw std::invalid_argument("Dist: empty mass vector");
    double sum = 0.0;
    for (double v : p_) {
      if (!(v >= 0.0)) throw std::invalid_argument("Dist: negative or NaN entry");
      sum += v;
    }
    if (std::abs(sum - 1.0) > kRenormDrift)
      throw std::invalid_argument("Dist: mass sums to " + std::to_string(sum));
    if (std::abs(sum - 1.0) > kSumTolerance)
      for (double& v : p_) v /= sum;
  }

  static Dist uniform(std::size_t k) {
    return Dist(std::vector<double>(k, 1.0 / static_cast<double>(k)));
  }
  static Dist point_mass(std::size_t k, std::size_t at) {
    std::vector<double> v(k, 0.0);
    v.at(at) = 1.0;
    return Dist(std::move(v));
  }

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const std::vector<double>& mass() const { return p_; }

 private:
  std::vector<double> p_;
};

// Stochastic kernel: one Dist per input symbol; rows_[u] is the law of the
// output given input u.
class CondDist {
 public:
  CondDist() = default;

  CondDist(std::size_t in_size, std::size_t out_size, std::vector<double> flat)
      : in_(in_size), out_(out_size) {
    if (in_ == 0 || out_ == 0 || flat.size() != in_ * out_)
      throw std::invalid_argument("CondDist: bad dimensions");
    rows_.reserve(in_);
    for (std::size_t u = 0; u < in_; ++u)
      rows_.emplace_back(std::vector<double>(flat.begin() + u * out_,
                                             flat.begin() + (u + 1) * out_));
  }

  explicit CondDist(std::vector<Dist> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw std::invalid_argument("CondDist: no rows");
    in_ = rows_.size();
    out_ = rows_[0].size();
    for (const Dist& r : rows_)
      if (r.size() != out_) throw std::invalid_argument("CondDist: ragged rows");
  }

  static CondDist identity(std::size_t k) {
    std::vector<double> flat(k * k, 0.0);
    for (std::size_t i = 0; i < k; ++i) flat[i * k + i] = 1.0;
    return CondDist(k, k, std::move(flat));
  }

  std::size_t in_size() const { return in_; }
  std::size_t out_size() const { return out_; }
  double operator()(std::size_t out, std::size_t in) const { return rows_[in][out]; }
  const Dist& row(std::size_t in) const { return rows_[in]; }

 private:
  std::size_t in_ = 0, out_ = 0;
  std::vector<Dist> rows_;
};

// Binary symmetric channel with flip probability lambda.
inline CondDist bsc(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("bsc: flip probability outside [0,1]");
  return CondDist(2, 2, {1.0 - lambda, lambda, lambda, 1.0 - lambda});
}

// Kernel where each output symbol is reachable from at most one input symbol.
// These are the kernels for which chained type-class membership composes.
class DetCondDist {
 public:
  explicit DetCondDist(CondDist kernel) : k_(std::move(kernel)) {
    for (std::size_t y = 0; y < k_.out_size(); ++y) {
      std::size_t positive = 0;
      for (std::size_t x = 0; x < k_.in_size(); ++x)
        if (k_(y, x) > 0.0) ++positive;
      if (positive > 1)
        throw std::invalid_argument(
            "DetCondDist: output symbol reachable from two inputs");
    }
  }
  const CondDist& kernel() const { return k_; }

 private:
  CondDist k_;
};

// The two component channels of the adversarial model: t carries the
// legitimate transmission, q the adversary's observation.
struct ChannelPair {
  CondDist t;  // X -> Y
  CondDist q;  // X -> Z

  ChannelPair(CondDist t_in, CondDist q_in) : t(std::move(t_in)), q(std::move(q_in)) {
    if (t.in_size() != q.in_size())
      throw std::invalid_argument("ChannelPair: input alphabets differ");
  }
};

// (v rho)(y|u) = sum_x v(y|x) rho(x|u). v is broadcast over the conditioning
// symbol of rho; this is the explicit form of the dimensional-mismatch
// convention.
inline CondDist compose(const CondDist& v, const CondDist& rho) {
  if (v.in_size() != rho.out_size())
    throw std::invalid_argument("compose: inner alphabet mismatch");
  std::vector<double> flat(rho.in_size() * v.out_size(), 0.0);
  for (std::size_t u = 0; u < rho.in_size(); ++u)
    for (std::size_t x = 0; x < rho.out_size(); ++x) {
      const double px = rho(x, u);
      if (px == 0.0) continue;
      for (std::size_t y = 0; y < v.out_size(); ++y)
        flat[u * v.out_size() + y] += v(y, x) * px;
    }
  return CondDist(rho.in_size(), v.out_size(), std::move(flat));
}

// (v x rho)(y,x|u) = v(y|x) rho(x|u), output alphabet flattened as y*|X|+x.
inline CondDist joint(const CondDist& v, const CondDist& rho) {
  if (v.in_size() != rho.out_size())
    throw std::invalid_argument("joint: inner alphabet mismatch");
  const std::size_t ny = v.out_size(), nx = rho.out_size();
  std::vector<double> flat(rho.in_size() * ny * nx, 0.0);
  for (std::size_t u = 0; u < rho.in_size(); ++u)
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t x = 0; x < nx; ++x)
        flat[u * ny * nx + y * nx + x] = v(y, x) * rho(x, u);
  return CondDist(rho.in_size(), ny * nx, std::move(flat));
}

// Marginal law of the conditioning side: (sigma tau)(u) = sum_w sigma(u|w) tau(w).
inline Dist push_forward(const CondDist& sigma, const Dist& tau) {
  if (sigma.in_size() != tau.size())
    throw std::invalid_argument("push_forward: alphabet mismatch");
  std::vector<double> out(sigma.out_size(), 0.0);
  for (std::size_t w = 0; w < tau.size(); ++w) {
    if (tau[w] == 0.0) continue;
    for (std::size_t u = 0; u < sigma.out_size(); ++u)
      out[u] += sigma(u, w) * tau[w];
  }
  return Dist(std::move(out));
}

}  // namespace authcap
