#pragma once

#include <cmath>
#include <limits>

#include "authcap/prob.hpp"

namespace authcap {

// All functionals are in bits (base-2 logs). Infinities are values, not
// errors, so minimizations can treat infeasible points uniformly.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double pos_part(double a) { return a > 0.0 ? a : 0.0; }
inline double neg_part(double a) { return a < 0.0 ? a : 0.0; }

// H(rho|sigma) = -sum_{u,x} sigma(u) rho(x|u) log2 rho(x|u), with 0 log 0 = 0.
inline double entropy(const CondDist& rho, const Dist& sigma) {
  if (rho.in_size() != sigma.size())
    throw std::invalid_argument("entropy: alphabet mismatch");
  double h = 0.0;
  for (std::size_t u = 0; u < sigma.size(); ++u) {
    const double w = sigma[u];
    if (w == 0.0) continue;
    for (std::size_t x = 0; x < rho.out_size(); ++x) {
      const double p = rho(x, u);
      if (p > 0.0) h -= w * p * std::log2(p);
    }
  }
  return h;
}

inline double entropy(const Dist& p) {
  double h = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) h -= p[i] * std::log2(p[i]);
  return h;
}

// I(q,rho|sigma): mutual information between the output of q and the output
// of rho, conditioned on rho's input, with q broadcast over that input.
inline double mutual_info(const CondDist& q, const CondDist& rho, const Dist& sigma) {
  if (q.in_size() != rho.out_size() || rho.in_size() != sigma.size())
    throw std::invalid_argument("mutual_info: alphabet mismatch");
  const CondDist qr = compose(q, rho);
  double mi = 0.0;
  for (std::size_t u = 0; u < sigma.size(); ++u) {
    const double w = sigma[u];
    if (w == 0.0) continue;
    for (std::size_t x = 0; x < rho.out_size(); ++x) {
      const double px = rho(x, u);
      if (px == 0.0) continue;
      for (std::size_t y = 0; y < q.out_size(); ++y) {
        const double py = q(y, x);
        if (py == 0.0) continue;
        mi += w * px * py * std::log2(py / qr(y, u));
      }
    }
  }
  return mi;
}

// Unconditional form I(q,sigma): input drawn from sigma.
inline double mutual_info(const CondDist& q, const Dist& sigma) {
  if (q.in_size() != sigma.size())
    throw std::invalid_argument("mutual_info: alphabet mismatch");
  std::vector<double> marg(q.out_size(), 0.0);
  for (std::size_t x = 0; x < sigma.size(); ++x)
    for (std::size_t y = 0; y < q.out_size(); ++y) marg[y] += sigma[x] * q(y, x);
  double mi = 0.0;
  for (std::size_t x = 0; x < sigma.size(); ++x) {
    if (sigma[x] == 0.0) continue;
    for (std::size_t y = 0; y < q.out_size(); ++y) {
      const double py = q(y, x);
      if (py == 0.0) continue;
      mi += sigma[x] * py * std::log2(py / marg[y]);
    }
  }
  return mi;
}

// D(rho || omega | sigma); +inf when rho puts sigma-weighted mass outside the
// support of omega.
inline double kl_div(const CondDist& rho, const CondDist& omega, const Dist& sigma) {
  if (rho.in_size() != omega.in_size() || rho.out_size() != omega.out_size() ||
      rho.in_size() != sigma.size())
    throw std::invalid_argument("kl_div: alphabet mismatch");
  double d = 0.0;
  for (std::size_t u = 0; u < sigma.size(); ++u) {
    const double w = sigma[u];
    if (w == 0.0) continue;
    for (std::size_t x = 0; x < rho.out_size(); ++x) {
      const double p = rho(x, u);
      if (p == 0.0) continue;
      const double q = omega(x, u);
      if (q == 0.0) return kInf;
      d += w * p * std::log2(p / q);
    }
  }
  return d;
}

inline double kl_div(const Dist& p, const Dist& q) {
  if (p.size() != q.size()) throw std::invalid_argument("kl_div: size mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return kInf;
    d += p[i] * std::log2(p[i] / q[i]);
  }
  return d;
}

// S_{a,b}(mu,nu|rho,sigma) =
//   I(mu,rho|sigma) + a - I(nu,rho|sigma) + |I(mu rho,sigma) + b - I(nu rho,sigma)|^+
inline double s_ab(const CondDist& mu, const CondDist& nu, double a, double b,
                   const CondDist& rho, const Dist& sigma) {
  if (mu.in_size() != nu.in_size())
    throw std::invalid_argument("s_ab: mu and nu condition on different alphabets");
  const double inner = mutual_info(mu, rho, sigma) + a - mutual_info(nu, rho, sigma);
  const double outer = mutual_info(compose(mu, rho), sigma) + b -
                       mutual_info(compose(nu, rho), sigma);
  return inner + pos_part(outer);
}

// Single-argument variant: the mu terms are absent.
inline double s_ab_single(const CondDist& nu, double a, double b,
                          const CondDist& rho, const Dist& sigma) {
  return a - mutual_info(nu, rho, sigma) +
         pos_part(b - mutual_info(compose(nu, rho), sigma));
}

// Secrecy surplus of mu over nu through (sigma, tau); equals S_{0,0} under the
// (rho,sigma) -> (sigma,tau) renaming.
inline double secrecy(const CondDist& mu, const CondDist& nu,
                      const DetCondDist& sigma, const Dist& tau) {
  return s_ab(mu, nu, 0.0, 0.0, sigma.kernel(), tau);
}

}  // namespace authcap
