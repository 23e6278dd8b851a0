#pragma once

#include <optional>
#include <string>

#include "authcap/info.hpp"
#include "authcap/parallel.hpp"
#include "authcap/project.hpp"

namespace authcap {

inline constexpr double kContainTol = 1e-9;  // slack tolerance, bits

struct RatePoint {
  double r = 0.0;      // message rate, bits/symbol
  double alpha = 0.0;  // authentication rate
  double kappa = 0.0;  // key consumption rate

  void validate() const {
    if (!(r >= 0.0 && alpha >= 0.0 && kappa >= 0.0))
      throw std::invalid_argument("RatePoint: rates must be nonnegative");
  }
};

struct AuxiliaryChoice {
  CondDist rho;      // X|U
  DetCondDist sigma; // U|W with the one-to-one property
  Dist tau;          // W
  int j = 1;         // communication rounds
};

struct ConstraintSlack {
  std::string constraint;
  double slack = 0.0;  // bits; nonnegative means satisfied
};

struct RegionVerdict {
  bool contained = false;
  std::vector<ConstraintSlack> slacks;
};

namespace detail {

inline RegionVerdict verdict_from(std::vector<ConstraintSlack> slacks) {
  RegionVerdict v;
  v.slacks = std::move(slacks);
  v.contained = true;
  for (const auto& s : v.slacks)
    if (!(s.slack >= -kContainTol)) v.contained = false;
  return v;
}

}  // namespace detail

// The three channel quantities every containment constraint uses.
struct InnerBoundTerms {
  double cap = 0.0;    // I(t rho, sigma tau)
  double leak = 0.0;   // L(t,q|rho,sigma,tau)
  double icond = 0.0;  // I(t rho, sigma | tau)
};

inline InnerBoundTerms compute_terms(const ChannelPair& pair, const AuxiliaryChoice& aux,
                                     double nu_grid_step = 0.05) {
  InnerBoundTerms terms;
  const CondDist t_rho = compose(pair.t, aux.rho);
  terms.cap = mutual_info(t_rho, push_forward(aux.sigma.kernel(), aux.tau));
  terms.icond = mutual_info(t_rho, aux.sigma.kernel(), aux.tau);
  terms.leak = l_func(pair, aux.rho, aux.sigma, aux.tau, nu_grid_step).value;
  return terms;
}

// Single-code inner bound: r + alpha <= cap, alpha <= L, alpha <= icond,
// alpha <= j kappa.
inline RegionVerdict theorem1_contains_terms(const RatePoint& p, const InnerBoundTerms& t,
                                             int j) {
  p.validate();
  return detail::verdict_from({
      {"r_plus_alpha", t.cap - (p.r + p.alpha)},
      {"alpha_leak", t.leak - p.alpha},
      {"alpha_cond_mi", t.icond - p.alpha},
      {"alpha_key", double(j) * p.kappa - p.alpha},
  });
}

inline RegionVerdict theorem1_contains(const RatePoint& p, const ChannelPair& pair,
                                       const AuxiliaryChoice& aux,
                                       double nu_grid_step = 0.05) {
  return theorem1_contains_terms(p, compute_terms(pair, aux, nu_grid_step), aux.j);
}

// Keyed-subset composition: (r, alpha, kappa) -> (r - beta, alpha + beta,
// kappa + (1 + 1/j) beta) for 0 <= beta < r (beta = 0 is the identity).
inline RatePoint theorem2_transform(const RatePoint& p, double beta, int j) {
  p.validate();
  if (j < 1) throw std::invalid_argument("theorem2_transform: j must be positive");
  if (beta < 0.0 || (beta > 0.0 && beta >= p.r))
    throw std::invalid_argument("theorem2_transform: beta out of [0, r)");
  return RatePoint{p.r - beta, p.alpha + beta,
                   p.kappa + (1.0 + 1.0 / double(j)) * beta};
}

// Combined inner bound after eliminating the transform parameter:
// r + alpha <= cap, (1+1/j) alpha - kappa <= L, (1+1/j) alpha - kappa <= icond,
// alpha <= j kappa.
inline RegionVerdict theorem3_contains_terms(const RatePoint& p, const InnerBoundTerms& t,
                                             int j) {
  p.validate();
  const double scaled = (1.0 + 1.0 / double(j)) * p.alpha - p.kappa;
  return detail::verdict_from({
      {"r_plus_alpha", t.cap - (p.r + p.alpha)},
      {"alpha_leak", t.leak - scaled},
      {"alpha_cond_mi", t.icond - scaled},
      {"alpha_key", double(j) * p.kappa - p.alpha},
  });
}

inline RegionVerdict theorem3_contains(const RatePoint& p, const ChannelPair& pair,
                                       const AuxiliaryChoice& aux,
                                       double nu_grid_step = 0.05) {
  return theorem3_contains_terms(p, compute_terms(pair, aux, nu_grid_step), aux.j);
}

// ---------------------------------------------------------------------------
// Comparison region (two-key scheme with the corrected exponent), one round.
// Membership holds if some kappa_tilde >= 0 satisfies
//   r + kappa <= I(t rho, tau) + kappa_tilde
//   alpha - kappa <= -kappa_tilde
//   alpha <= inf_nu D(nu || q rho | tau) + |kappa_tilde + I(t rho,tau) - I(nu,tau)|^+
// ---------------------------------------------------------------------------

namespace detail {

struct NuSample {
  double div = 0.0;  // D(nu || q rho | tau)
  double mi = 0.0;   // I(nu, tau)
};

inline std::vector<NuSample> gungor_nu_samples(const ChannelPair& pair,
                                               const CondDist& rho, const Dist& tau,
                                               double step, std::size_t budget) {
  const CondDist q_rho = compose(pair.q, rho);
  const std::size_t nu_in = q_rho.in_size(), nz = q_rho.out_size();
  const int m = std::max(1, static_cast<int>(std::llround(1.0 / step)));
  std::vector<std::vector<double>> rows;
  grid_rows(m, static_cast<int>(nz), rows);
  double combos = 1.0;
  for (std::size_t u = 0; u < nu_in; ++u) combos *= double(rows.size());
  if (combos > double(budget))
    throw BudgetExceeded("gungor: nu grid larger than evaluation budget");

  std::vector<NuSample> samples;
  std::vector<std::size_t> idx(nu_in, 0);
  std::vector<double> flat(nu_in * nz);
  while (true) {
    for (std::size_t u = 0; u < nu_in; ++u)
      for (std::size_t z = 0; z < nz; ++z) flat[u * nz + z] = rows[idx[u]][z];
    CondDist nu(nu_in, nz, flat);
    samples.push_back({kl_div(nu, q_rho, tau), mutual_info(nu, tau)});
    std::size_t pos = 0;
    while (pos < nu_in && ++idx[pos] == rows.size()) idx[pos++] = 0;
    if (pos == nu_in) break;
  }
  // the witness nu = q rho (zero divergence) is always a candidate
  samples.push_back({0.0, mutual_info(q_rho, tau)});
  return samples;
}

inline double gungor_alpha_bound(const std::vector<NuSample>& samples, double cap,
                                 double kappa_tilde) {
  double best = kInf;
  for (const auto& s : samples) {
    const double v = s.div + pos_part(kappa_tilde + cap - s.mi);
    if (v < best) best = v;
  }
  return best;
}

}  // namespace detail

struct GungorVerdict {
  RegionVerdict verdict;
  double best_kappa_tilde = 0.0;  // witness maximizing the minimum slack
};

inline GungorVerdict gungor_contains(const RatePoint& p, const ChannelPair& pair,
                                     const CondDist& rho, const Dist& tau,
                                     double kappa_tilde_step = 1e-3,
                                     double nu_step = 1e-3,
                                     std::size_t budget = 1000000) {
  p.validate();
  if (kappa_tilde_step <= 0.0)
    throw std::invalid_argument("gungor_contains: grid resolution must be positive");
  const double cap = mutual_info(compose(pair.t, rho), tau);
  const auto samples = detail::gungor_nu_samples(pair, rho, tau, nu_step, budget);

  auto slacks_at = [&](double kt) {
    return std::vector<ConstraintSlack>{
        {"sum_rate_key", cap + kt - (p.r + p.kappa)},
        {"alpha_key_gap", (p.kappa - kt) - p.alpha},
        {"alpha_exponent", detail::gungor_alpha_bound(samples, cap, kt) - p.alpha},
    };
  };
  auto min_slack = [&](double kt) {
    double worst = kInf;
    for (const auto& s : slacks_at(kt)) worst = std::min(worst, s.slack);
    return worst;
  };

  double best_kt = 0.0, best_val = min_slack(0.0);
  for (double kt = kappa_tilde_step; kt <= 2.0 + 1e-12; kt += kappa_tilde_step) {
    const double v = min_slack(kt);
    if (v > best_val) {
      best_val = v;
      best_kt = kt;
    }
  }
  // golden-section refinement of the best cell; the constraints are
  // piecewise-linear in kappa_tilde, so coarse-then-refine is sound
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::max(0.0, best_kt - kappa_tilde_step), b = best_kt + kappa_tilde_step;
  double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
  double f1 = min_slack(c1), f2 = min_slack(c2);
  for (int it = 0; it < 60 && (b - a) > 1e-12; ++it) {
    if (f1 >= f2) {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - gr * (b - a);
      f1 = min_slack(c1);
    } else {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + gr * (b - a);
      f2 = min_slack(c2);
    }
  }
  const double mid = (a + b) / 2.0;
  if (min_slack(mid) > best_val) {
    best_val = min_slack(mid);
    best_kt = mid;
  }

  GungorVerdict out;
  out.best_kappa_tilde = best_kt;
  out.verdict = detail::verdict_from(slacks_at(best_kt));
  return out;
}

// ---------------------------------------------------------------------------
// Binary-symmetric specialization: channels and auxiliaries restricted to
// symmetric form. The restriction is a computational device; the sweeps are
// inner bounds and make no optimality claim.
// ---------------------------------------------------------------------------

struct BscFamily {
  double lambda_t = 0.0;
  double lambda_q = 0.0;

  ChannelPair channels() const { return ChannelPair(bsc(lambda_t), bsc(lambda_q)); }
};

struct BscSearchOptions {
  double rho_step = 1.0 / 16.0;  // lambda_rho grid over [0, 1/2]
  double nu_step = 0.005;        // symmetric nu grid over [0, 1]
};

// The two strictly valid auxiliary structures in symmetric mode. A singleton
// public alphabet with a uniform inner layer carries the channel-secrecy
// regime; an identity inner layer carries the pure keyed-subset regime. Both
// satisfy the one-to-one property exactly, so no relaxed kernels are needed.
enum class BscAuxStructure { SingletonW = 0, IdentitySigma = 1 };

inline AuxiliaryChoice make_bsc_aux(BscAuxStructure structure, double lambda_rho, int j) {
  if (structure == BscAuxStructure::SingletonW)
    return AuxiliaryChoice{bsc(lambda_rho), DetCondDist(CondDist(1, 2, {0.5, 0.5})),
                           Dist({1.0}), j};
  return AuxiliaryChoice{bsc(lambda_rho), DetCondDist(CondDist::identity(2)),
                         Dist::uniform(2), j};
}

struct BscLResult {
  double value = 0.0;
  double lambda_nu = 0.0;
};

// L over the symmetric nu family, with the exact witness nu = q rho included
// and golden-section refinement around the best grid cell. Ties resolve to
// the smaller flip parameter.
inline BscLResult l_func_bsc(const ChannelPair& pair, const AuxiliaryChoice& aux,
                             double nu_step) {
  const Dist st = push_forward(aux.sigma.kernel(), aux.tau);
  const CondDist t_rho = compose(pair.t, aux.rho);
  auto objective = [&](const CondDist& nu) {
    const double f = f_project_single(pair.q, aux.rho, st, nu).value;
    if (f == kInf) return kInf;
    return f + pos_part(secrecy(t_rho, nu, aux.sigma, aux.tau));
  };
  auto at = [&](double lambda) { return objective(bsc(lambda)); };

  const CondDist q_rho = compose(pair.q, aux.rho);
  BscLResult best{objective(q_rho), q_rho(1, 0)};

  const int m = std::max(1, static_cast<int>(std::llround(1.0 / nu_step)));
  for (int i = 0; i <= m; ++i) {
    const double lam = double(i) / double(m);
    const double v = at(lam);
    if (v < best.value) best = {v, lam};
  }
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::max(0.0, best.lambda_nu - 1.0 / double(m));
  double b = std::min(1.0, best.lambda_nu + 1.0 / double(m));
  double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
  double f1 = at(c1), f2 = at(c2);
  for (int it = 0; it < 60 && (b - a) > 1e-11; ++it) {
    if (f1 <= f2) {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - gr * (b - a);
      f1 = at(c1);
    } else {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + gr * (b - a);
      f2 = at(c2);
    }
  }
  const double mid = (a + b) / 2.0;
  const double vm = at(mid);
  if (vm < best.value) best = {vm, mid};
  return best;
}

inline InnerBoundTerms compute_terms_bsc(const ChannelPair& pair,
                                         const AuxiliaryChoice& aux, double nu_step) {
  InnerBoundTerms terms;
  const CondDist t_rho = compose(pair.t, aux.rho);
  terms.cap = mutual_info(t_rho, push_forward(aux.sigma.kernel(), aux.tau));
  terms.icond = mutual_info(t_rho, aux.sigma.kernel(), aux.tau);
  terms.leak = l_func_bsc(pair, aux, nu_step).value;
  return terms;
}

struct BscBest {
  double alpha = 0.0;
  BscAuxStructure structure = BscAuxStructure::SingletonW;
  double lambda_rho = 0.0;
  std::string binding;
};

namespace detail {

struct AlphaParts {
  double alpha;
  std::string binding;
};

inline AlphaParts theorem3_alpha_cap(const InnerBoundTerms& t, double r, double kappa,
                                     int j) {
  const double jj = double(j) / double(j + 1);
  const double caps[4] = {t.cap - r, jj * (kappa + t.leak), jj * (kappa + t.icond),
                          double(j) * kappa};
  static const char* names[4] = {"r_plus_alpha", "alpha_leak", "alpha_cond_mi",
                                 "alpha_key"};
  int arg = 0;
  for (int i = 1; i < 4; ++i)
    if (caps[i] < caps[arg]) arg = i;
  return {caps[arg], names[arg]};
}

inline AlphaParts theorem1_alpha_cap(const InnerBoundTerms& t, double r, double kappa,
                                     int j) {
  const double caps[4] = {t.cap - r, t.leak, t.icond, double(j) * kappa};
  static const char* names[4] = {"r_plus_alpha", "alpha_leak", "alpha_cond_mi",
                                 "alpha_key"};
  int arg = 0;
  for (int i = 1; i < 4; ++i)
    if (caps[i] < caps[arg]) arg = i;
  return {caps[arg], names[arg]};
}

}  // namespace detail

// Maximum alpha at (r, kappa) over the symmetric auxiliary family, for the
// combined (theorem 3) or single-code (theorem 1) bound. Returns nothing when
// the region is empty at this r.
inline std::optional<BscBest> max_alpha_bsc(const BscFamily& family, double r,
                                            double kappa, int j, int theorem,
                                            const BscSearchOptions& opts = {}) {
  const ChannelPair pair = family.channels();
  auto alpha_for = [&](BscAuxStructure st, double lrho) -> detail::AlphaParts {
    const AuxiliaryChoice aux = make_bsc_aux(st, lrho, j);
    const InnerBoundTerms terms = compute_terms_bsc(pair, aux, opts.nu_step);
    return theorem == 1 ? detail::theorem1_alpha_cap(terms, r, kappa, j)
                        : detail::theorem3_alpha_cap(terms, r, kappa, j);
  };

  std::optional<BscBest> best;
  for (BscAuxStructure st : {BscAuxStructure::SingletonW, BscAuxStructure::IdentitySigma}) {
    const int m = std::max(1, static_cast<int>(std::llround(0.5 / opts.rho_step)));
    double best_l = 0.0, best_v = -kInf;
    std::string best_b;
    for (int i = 0; i <= m; ++i) {
      const double lrho = 0.5 * double(i) / double(m);
      const auto ap = alpha_for(st, lrho);
      if (ap.alpha > best_v) {
        best_v = ap.alpha;
        best_l = lrho;
        best_b = ap.binding;
      }
    }
    // golden-section refinement of lambda_rho around the best grid point
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::max(0.0, best_l - 0.5 / double(m));
    double b = std::min(0.5, best_l + 0.5 / double(m));
    double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
    auto val = [&](double l) { return alpha_for(st, l).alpha; };
    double f1 = val(c1), f2 = val(c2);
    for (int it = 0; it < 40 && (b - a) > 1e-10; ++it) {
      if (f1 >= f2) {
        b = c2;
        c2 = c1;
        f2 = f1;
        c1 = b - gr * (b - a);
        f1 = val(c1);
      } else {
        a = c1;
        c1 = c2;
        f1 = f2;
        c2 = a + gr * (b - a);
        f2 = val(c2);
      }
    }
    const double mid = (a + b) / 2.0;
    const auto am = alpha_for(st, mid);
    if (am.alpha > best_v) {
      best_v = am.alpha;
      best_l = mid;
      best_b = am.binding;
    }
    if (!(best_v >= 0.0)) continue;  // region empty for this structure
    if (!best || best_v > best->alpha)
      best = BscBest{best_v, st, best_l, best_b};
  }
  return best;
}

struct GungorBest {
  double alpha = 0.0;
  double lambda_rho = 0.0;
  double kappa_tilde = 0.0;
};

namespace detail {

inline std::vector<NuSample> gungor_nu_samples_bsc(const ChannelPair& pair,
                                                   double lambda_rho, const Dist& tau,
                                                   double nu_step) {
  std::vector<NuSample> samples;
  const CondDist q_rho = compose(pair.q, bsc(lambda_rho));
  const int mn = std::max(1, static_cast<int>(std::llround(1.0 / nu_step)));
  samples.reserve(mn + 2);
  for (int s = 0; s <= mn; ++s) {
    const CondDist nu = bsc(double(s) / double(mn));
    samples.push_back({kl_div(nu, q_rho, tau), mutual_info(nu, tau)});
  }
  samples.push_back({0.0, mutual_info(q_rho, tau)});
  return samples;
}

}  // namespace detail

// Maximum alpha for the comparison region at (r, kappa), one round. The
// kappa-tilde objective min(kappa - kt, G(kt)) trades a decreasing line
// against a nondecreasing exponent, so it is unimodal and golden-section
// refinement of the grid optimum is sound.
inline std::optional<GungorBest> max_alpha_gungor_bsc(const BscFamily& family, double r,
                                                      double kappa,
                                                      const BscSearchOptions& opts = {},
                                                      double kappa_tilde_step = 1e-3) {
  const ChannelPair pair = family.channels();
  const Dist tau = Dist::uniform(2);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;

  auto best_for_rho = [&](double lrho) -> std::optional<GungorBest> {
    const CondDist rho = bsc(lrho);
    const double cap = mutual_info(compose(pair.t, rho), tau);
    const double kt_min = std::max(0.0, (r + kappa) - cap);
    if (kt_min > kappa + kContainTol) return std::nullopt;  // alpha would be negative

    const auto samples = detail::gungor_nu_samples_bsc(pair, lrho, tau, opts.nu_step);

    auto alpha_at = [&](double kt) {
      return std::min(kappa - kt, detail::gungor_alpha_bound(samples, cap, kt));
    };
    GungorBest local{alpha_at(kt_min), lrho, kt_min};
    for (double kt = kt_min; kt <= kappa + 1e-12; kt += kappa_tilde_step) {
      const double v = alpha_at(kt);
      if (v > local.alpha) local = {v, lrho, kt};
    }
    double a = std::max(kt_min, local.kappa_tilde - kappa_tilde_step);
    double b = std::min(kappa, local.kappa_tilde + kappa_tilde_step);
    double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
    double f1 = alpha_at(c1), f2 = alpha_at(c2);
    for (int it = 0; it < 60 && (b - a) > 1e-12; ++it) {
      if (f1 >= f2) {
        b = c2;
        c2 = c1;
        f2 = f1;
        c1 = b - gr * (b - a);
        f1 = alpha_at(c1);
      } else {
        a = c1;
        c1 = c2;
        f1 = f2;
        c2 = a + gr * (b - a);
        f2 = alpha_at(c2);
      }
    }
    const double mid = (a + b) / 2.0;
    if (alpha_at(mid) > local.alpha) local = {alpha_at(mid), lrho, mid};
    if (!(local.alpha >= 0.0)) return std::nullopt;
    return local;
  };

  std::optional<GungorBest> best;
  const int m = std::max(1, static_cast<int>(std::llround(0.5 / opts.rho_step)));
  for (int i = 0; i <= m; ++i) {
    const auto local = best_for_rho(0.5 * double(i) / double(m));
    if (local && (!best || local->alpha > best->alpha)) best = local;
  }
  if (best) {  // refine lambda_rho around the winning grid point
    double a = std::max(0.0, best->lambda_rho - 0.5 / double(m));
    double b = std::min(0.5, best->lambda_rho + 0.5 / double(m));
    auto val = [&](double l) {
      const auto res = best_for_rho(l);
      return res ? res->alpha : -kInf;
    };
    double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
    double f1 = val(c1), f2 = val(c2);
    for (int it = 0; it < 30 && (b - a) > 1e-8; ++it) {
      if (f1 >= f2) {
        b = c2;
        c2 = c1;
        f2 = f1;
        c1 = b - gr * (b - a);
        f1 = val(c1);
      } else {
        a = c1;
        c1 = c2;
        f1 = f2;
        c2 = a + gr * (b - a);
        f2 = val(c2);
      }
    }
    const auto refined = best_for_rho((a + b) / 2.0);
    if (refined && refined->alpha > best->alpha) best = refined;
  }
  return best;
}

// Containment verdict for the comparison region over the symmetric family,
// with slacks reported at the witness (lambda_rho, kappa_tilde).
inline GungorVerdict gungor_contains_bsc(const RatePoint& p, const BscFamily& family,
                                         const BscSearchOptions& opts = {},
                                         double kappa_tilde_step = 1e-3) {
  p.validate();
  GungorVerdict out;
  const auto best = max_alpha_gungor_bsc(family, p.r, p.kappa, opts, kappa_tilde_step);
  if (!best) {
    out.verdict.contained = false;
    out.verdict.slacks = {{"sum_rate_key", -kInf}};
    return out;
  }
  const ChannelPair pair = family.channels();
  const Dist tau = Dist::uniform(2);
  const double cap = mutual_info(compose(pair.t, bsc(best->lambda_rho)), tau);
  const auto samples =
      detail::gungor_nu_samples_bsc(pair, best->lambda_rho, tau, opts.nu_step);
  const double kt = best->kappa_tilde;
  out.best_kappa_tilde = kt;
  out.verdict = detail::verdict_from({
      {"sum_rate_key", cap + kt - (p.r + p.kappa)},
      {"alpha_key_gap", (p.kappa - kt) - p.alpha},
      {"alpha_exponent", detail::gungor_alpha_bound(samples, cap, kt) - p.alpha},
  });
  return out;
}

// ---------------------------------------------------------------------------
// Boundary sweeps
// ---------------------------------------------------------------------------

enum class SweepMode { RVsAlpha, AlphaVsKappa, AlphaVsLambdaT };

struct SweepOptions {
  double x_min = 0.0, x_max = 0.5, x_step = 0.01;
  double r = 0.25, kappa = 0.25;  // fixed bindings, per mode
  int j = 1;
  bool compare_gungor = false;
  BscSearchOptions search;
};

struct CurvePoint {
  double x = 0.0;
  std::optional<double> value;   // max alpha of the combined bound
  std::string binding;
  std::optional<double> gungor;  // comparison curve when requested
};

using Curve = std::vector<CurvePoint>;

inline Curve sweep_bsc(const BscFamily& family, SweepMode mode, const SweepOptions& opts) {
  std::size_t count = 0;
  for (double x = opts.x_min; x <= opts.x_max + 1e-12; x += opts.x_step) ++count;
  Curve curve(count);

  parallel_for(count, [&](std::size_t i) {
    const double x = opts.x_min + double(i) * opts.x_step;
    BscFamily fam = family;
    double r = opts.r, kappa = opts.kappa;
    switch (mode) {
      case SweepMode::RVsAlpha: r = x; break;
      case SweepMode::AlphaVsKappa: kappa = x; break;
      case SweepMode::AlphaVsLambdaT: fam.lambda_t = x; break;
    }
    CurvePoint pt;
    pt.x = x;
    if (const auto best = max_alpha_bsc(fam, r, kappa, opts.j, 3, opts.search)) {
      pt.value = best->alpha;
      pt.binding = best->binding;
    }
    if (opts.compare_gungor)
      if (const auto g = max_alpha_gungor_bsc(fam, r, kappa, opts.search))
        pt.gungor = g->alpha;
    curve[i] = pt;
  });

  Curve out;
  for (const auto& pt : curve)
    if (pt.value || pt.gungor) out.push_back(pt);
  return out;
}

}  // namespace authcap
