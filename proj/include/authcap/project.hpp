#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "authcap/info.hpp"
#include "authcap/prob.hpp"

namespace authcap {

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A constrained KL minimization instance. BothMarginals pins both the input
// and output marginals of a joint kernel against reference x rho; OutputMarginal
// pins only the mixture through rho (the adversary-channel form).
struct ProjectionProblem {
  enum class Mode { BothMarginals, OutputMarginal };
  CondDist reference;  // t or q, broadcast over the conditioning symbol
  CondDist rho;        // X|U
  Dist sigma;          // U (or the composed sigma*tau law)
  CondDist target;     // mu (Y|U) or nu (Z|U)
  Mode mode = Mode::BothMarginals;
};

struct ProjectionResult {
  double value = 0.0;  // bits; +inf when the constraint set is empty
  // BothMarginals: rows indexed by u, outputs flattened y*|X|+x.
  // OutputMarginal: rows indexed by u*|X|+x, outputs z.
  std::optional<CondDist> minimizer;
  int iterations = 0;
  bool converged = false;
};

namespace detail {

inline constexpr double kMarginalGapTol = 1e-10;
inline constexpr int kMaxScalingIters = 10000;
inline constexpr double kStallGap = 1e-6;
inline constexpr int kStallIters = 1000;

// Transportation feasibility: a coupling with output marginal `demand` and
// rows restricted to the support pattern `open(row, col)` exists iff every
// demand subset is covered by enough supply (Hall condition, via max-flow
// min-cut). Alphabets are small, so subsets are enumerated directly.
template <typename OpenFn>
bool hall_feasible(const std::vector<double>& demand,
                   const std::vector<double>& supply, OpenFn open) {
  const std::size_t nd = demand.size(), ns = supply.size();
  if (nd > 20) return true;  // fall back to stall detection
  for (std::size_t mask = 1; mask < (std::size_t(1) << nd); ++mask) {
    double need = 0.0;
    for (std::size_t d = 0; d < nd; ++d)
      if (mask & (std::size_t(1) << d)) need += demand[d];
    double reach = 0.0;
    for (std::size_t s = 0; s < ns; ++s) {
      if (supply[s] == 0.0) continue;
      for (std::size_t d = 0; d < nd; ++d)
        if ((mask & (std::size_t(1) << d)) && open(d, s)) {
          reach += supply[s];
          break;
        }
    }
    if (need > reach + 1e-9) return false;
  }
  return true;
}

}  // namespace detail

// min_{zeta} D(zeta || t x rho | sigma) over joint kernels zeta(y,x|u) with
// sum_y zeta = rho(x|u) and sum_x zeta = mu(y|u). Solved per conditioning
// symbol by iterative proportional fitting on the reference t(y|x)rho(x|u):
// the problem is an I-projection onto a transportation polytope, where
// alternating row/column scaling converges geometrically.
inline ProjectionResult f_project(const CondDist& t, const CondDist& rho,
                                  const Dist& sigma, const CondDist& mu) {
  const std::size_t nu_ = sigma.size(), ny = t.out_size(), nx = rho.out_size();
  if (rho.in_size() != nu_ || mu.in_size() != nu_ || mu.out_size() != ny ||
      t.in_size() != nx)
    throw std::invalid_argument("f_project: alphabet mismatch");

  ProjectionResult res;
  res.converged = true;
  std::vector<double> flat(nu_ * ny * nx, 0.0);
  bool feasible = true;

  for (std::size_t u = 0; u < nu_ && feasible; ++u) {
    std::vector<double> ref(ny * nx);
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t x = 0; x < nx; ++x) ref[y * nx + x] = t(y, x) * rho(x, u);

    if (sigma[u] == 0.0) {  // weightless symbol: any valid rows will do
      std::copy(ref.begin(), ref.end(), flat.begin() + u * ny * nx);
      continue;
    }

    std::vector<double> row_target(ny), col_target(nx);
    for (std::size_t y = 0; y < ny; ++y) row_target[y] = mu(y, u);
    for (std::size_t x = 0; x < nx; ++x) col_target[x] = rho(x, u);

    if (!detail::hall_feasible(row_target, col_target,
                               [&](std::size_t y, std::size_t x) {
                                 return ref[y * nx + x] > 0.0;
                               })) {
      feasible = false;
      break;
    }

    std::vector<double> z = ref;
    for (std::size_t y = 0; y < ny; ++y)
      if (row_target[y] == 0.0)
        for (std::size_t x = 0; x < nx; ++x) z[y * nx + x] = 0.0;
    for (std::size_t x = 0; x < nx; ++x)
      if (col_target[x] == 0.0)
        for (std::size_t y = 0; y < ny; ++y) z[y * nx + x] = 0.0;

    double gap = kInf;
    int it = 0;
    for (; it < detail::kMaxScalingIters; ++it) {
      for (std::size_t y = 0; y < ny; ++y) {
        double s = 0.0;
        for (std::size_t x = 0; x < nx; ++x) s += z[y * nx + x];
        if (s > 0.0) {
          const double f = row_target[y] / s;
          for (std::size_t x = 0; x < nx; ++x) z[y * nx + x] *= f;
        }
      }
      gap = 0.0;
      for (std::size_t x = 0; x < nx; ++x) {
        double s = 0.0;
        for (std::size_t y = 0; y < ny; ++y) s += z[y * nx + x];
        gap = std::max(gap, std::abs(s - col_target[x]));
        if (s > 0.0) {
          const double f = col_target[x] / s;
          for (std::size_t y = 0; y < ny; ++y) z[y * nx + x] *= f;
        }
      }
      double row_gap = 0.0;
      for (std::size_t y = 0; y < ny; ++y) {
        double s = 0.0;
        for (std::size_t x = 0; x < nx; ++x) s += z[y * nx + x];
        row_gap = std::max(row_gap, std::abs(s - row_target[y]));
      }
      gap = std::max(gap, row_gap);
      if (gap < detail::kMarginalGapTol) break;
      if (it >= detail::kStallIters && gap > detail::kStallGap) {
        feasible = false;
        break;
      }
    }
    res.iterations = std::max(res.iterations, it);
    if (!feasible) break;
    if (gap >= detail::kMarginalGapTol) res.converged = false;

    for (std::size_t i = 0; i < ny * nx; ++i) {
      if (z[i] > 0.0) res.value += sigma[u] * z[i] * std::log2(z[i] / ref[i]);
      flat[u * ny * nx + i] = z[i];
    }
  }

  if (!feasible) {
    res.value = kInf;
    res.converged = true;
    res.minimizer.reset();
    return res;
  }
  res.value = std::max(res.value, 0.0);  // the objective is provably nonnegative
  res.minimizer = CondDist(nu_, ny * nx, std::move(flat));
  return res;
}

// min_{zeta} D(zeta || q | rho x sigma) over kernels zeta(z|x,u) with
// sum_x zeta(z|x,u) rho(x|u) = nu(z|u). The constraint couples rows, so plain
// scaling does not apply; the dual has one multiplier per output symbol and a
// shared exponential tilt, fitted by multiplicative moment matching
// (exponentiated-gradient steps that preserve row-stochasticity).
inline ProjectionResult f_project_single(const CondDist& q, const CondDist& rho,
                                         const Dist& sigma, const CondDist& nu) {
  const std::size_t nu_ = sigma.size(), nz = q.out_size(), nx = rho.out_size();
  if (rho.in_size() != nu_ || nu.in_size() != nu_ || nu.out_size() != nz ||
      q.in_size() != nx)
    throw std::invalid_argument("f_project_single: alphabet mismatch");

  ProjectionResult res;
  res.converged = true;
  std::vector<double> flat(nu_ * nx * nz, 0.0);
  bool feasible = true;

  for (std::size_t u = 0; u < nu_ && feasible; ++u) {
    std::vector<double> w(nx), target(nz);
    for (std::size_t x = 0; x < nx; ++x) w[x] = rho(x, u);
    for (std::size_t z = 0; z < nz; ++z) target[z] = nu(z, u);

    if (sigma[u] == 0.0) {
      for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t z = 0; z < nz; ++z)
          flat[(u * nx + x) * nz + z] = q(z, x);
      continue;
    }

    if (!detail::hall_feasible(target, w,
                               [&](std::size_t z, std::size_t x) {
                                 return q(z, x) > 0.0;
                               })) {
      feasible = false;
      break;
    }

    std::vector<double> tilt(nz);
    for (std::size_t z = 0; z < nz; ++z) tilt[z] = target[z] > 0.0 ? 1.0 : 0.0;
    std::vector<double> p(nx * nz, 0.0), moment(nz);

    double gap = kInf;
    int it = 0;
    for (; it < detail::kMaxScalingIters; ++it) {
      std::fill(moment.begin(), moment.end(), 0.0);
      bool dead_row = false;
      for (std::size_t x = 0; x < nx; ++x) {
        if (w[x] == 0.0) continue;
        double norm = 0.0;
        for (std::size_t z = 0; z < nz; ++z) {
          p[x * nz + z] = q(z, x) * tilt[z];
          norm += p[x * nz + z];
        }
        if (norm == 0.0) {
          dead_row = true;
          break;
        }
        for (std::size_t z = 0; z < nz; ++z) {
          p[x * nz + z] /= norm;
          moment[z] += w[x] * p[x * nz + z];
        }
      }
      if (dead_row) {
        feasible = false;
        break;
      }
      gap = 0.0;
      for (std::size_t z = 0; z < nz; ++z)
        gap = std::max(gap, std::abs(moment[z] - target[z]));
      if (gap < detail::kMarginalGapTol) break;
      if (it >= detail::kStallIters && gap > detail::kStallGap) {
        feasible = false;
        break;
      }
      for (std::size_t z = 0; z < nz; ++z)
        if (target[z] > 0.0 && moment[z] > 0.0) tilt[z] *= target[z] / moment[z];
    }
    res.iterations = std::max(res.iterations, it);
    if (!feasible) break;
    if (gap >= detail::kMarginalGapTol) res.converged = false;

    for (std::size_t x = 0; x < nx; ++x) {
      if (w[x] == 0.0) {
        for (std::size_t z = 0; z < nz; ++z)
          flat[(u * nx + x) * nz + z] = q(z, x);
        continue;
      }
      for (std::size_t z = 0; z < nz; ++z) {
        const double pz = p[x * nz + z];
        flat[(u * nx + x) * nz + z] = pz;
        if (pz > 0.0) res.value += sigma[u] * w[x] * pz * std::log2(pz / q(z, x));
      }
    }
  }

  if (!feasible) {
    res.value = kInf;
    res.converged = true;
    res.minimizer.reset();
    return res;
  }
  res.value = std::max(res.value, 0.0);
  res.minimizer = CondDist(nu_ * nx, nz, std::move(flat));
  return res;
}

inline ProjectionResult solve(const ProjectionProblem& prob) {
  return prob.mode == ProjectionProblem::Mode::BothMarginals
             ? f_project(prob.reference, prob.rho, prob.sigma, prob.target)
             : f_project_single(prob.reference, prob.rho, prob.sigma, prob.target);
}

struct LResult {
  double value = 0.0;
  CondDist nu;  // witness channel attaining the reported value
};

namespace detail {

// Enumerates rows of the nu-grid: compositions of m into nz parts, first
// coordinate descending so that low-flip rows come first and ties resolve
// toward them.
inline void grid_rows(int m, int nz, std::vector<std::vector<double>>& out) {
  std::vector<int> c(nz, 0);
  std::vector<double> row(nz);
  // recursive composition enumeration, c[0] from m down to 0
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == nz - 1) {
      c[pos] = left;
      for (int i = 0; i < nz; ++i) row[i] = double(c[i]) / double(m);
      out.push_back(row);
      return;
    }
    for (int v = left; v >= 0; --v) {
      c[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, m);
}

}  // namespace detail

// L(t,q|rho,sigma,tau): the channel-derived authentication budget. Minimizes
// atypicality penalty plus clipped secrecy surplus over the adversary's
// empirical channel nu, by grid search with golden-section refinement of the
// best cell. The candidate nu = q rho is always evaluated, so the result never
// exceeds that witness value, and equals 0 when q = t.
inline LResult l_func(const ChannelPair& pair, const CondDist& rho,
                      const DetCondDist& sigma, const Dist& tau,
                      double grid_step, std::size_t budget = 1000000) {
  if (grid_step <= 0.0) throw std::invalid_argument("l_func: grid step must be positive");
  const Dist st = push_forward(sigma.kernel(), tau);
  const std::size_t nun = st.size(), nz = pair.q.out_size();
  const CondDist t_rho = compose(pair.t, rho);

  auto objective = [&](const CondDist& nu) {
    const double f = f_project_single(pair.q, rho, st, nu).value;
    if (f == kInf) return kInf;
    return f + pos_part(secrecy(t_rho, nu, sigma, tau));
  };

  LResult best{kInf, compose(pair.q, rho)};
  best.value = objective(best.nu);  // witness upper bound, often exactly 0

  const int m = std::max(1, static_cast<int>(std::llround(1.0 / grid_step)));
  std::vector<std::vector<double>> rows;
  detail::grid_rows(m, static_cast<int>(nz), rows);
  double combos = 1.0;
  for (std::size_t u = 0; u < nun; ++u) combos *= static_cast<double>(rows.size());
  if (combos > static_cast<double>(budget))
    throw BudgetExceeded("l_func: nu grid larger than evaluation budget");

  std::vector<std::size_t> idx(nun, 0);
  std::vector<double> flat(nun * nz);
  while (true) {
    for (std::size_t u = 0; u < nun; ++u)
      for (std::size_t z = 0; z < nz; ++z) flat[u * nz + z] = rows[idx[u]][z];
    CondDist nu(nun, nz, flat);
    const double v = objective(nu);
    if (v < best.value) best = {v, nu};
    std::size_t pos = 0;
    while (pos < nun && ++idx[pos] == rows.size()) idx[pos++] = 0;
    if (pos == nun) break;
  }

  // golden-section refinement: each free coordinate of each row in turn,
  // traded against the row's last coordinate
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  std::vector<double> cur(nun * nz);
  for (std::size_t u = 0; u < nun; ++u)
    for (std::size_t z = 0; z < nz; ++z) cur[u * nz + z] = best.nu(z, u);
  const double span = 1.0 / double(m);
  for (int round = 0; round < 3; ++round) {
    for (std::size_t u = 0; u < nun; ++u) {
      for (std::size_t z = 0; z + 1 < nz; ++z) {
        const double base = cur[u * nz + z];
        const double other = cur[u * nz + (nz - 1)];
        double lo = std::max(0.0, base - span), hi = std::min(base + other, base + span);
        if (hi - lo < 1e-12) continue;
        auto eval_at = [&](double val) {
          std::vector<double> f2 = cur;
          f2[u * nz + z] = val;
          f2[u * nz + (nz - 1)] = other + base - val;
          return objective(CondDist(nun, nz, f2));
        };
        double a = lo, b = hi;
        double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
        double f1 = eval_at(c1), f2v = eval_at(c2);
        for (int k = 0; k < 40 && (b - a) > 1e-10; ++k) {
          if (f1 <= f2v) {
            b = c2;
            c2 = c1;
            f2v = f1;
            c1 = b - gr * (b - a);
            f1 = eval_at(c1);
          } else {
            a = c1;
            c1 = c2;
            f1 = f2v;
            c2 = a + gr * (b - a);
            f2v = eval_at(c2);
          }
        }
        const double vbest = (a + b) / 2.0;
        const double fbest = eval_at(vbest);
        if (fbest < best.value) {
          cur[u * nz + (nz - 1)] = other + base - vbest;
          cur[u * nz + z] = vbest;
          best = {fbest, CondDist(nun, nz, cur)};
        }
      }
    }
  }
  return best;
}

}  // namespace authcap
