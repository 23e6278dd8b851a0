#include <catch2/catch_amalgamated.hpp>

#include "authcap/info.hpp"
#include "helpers.hpp"

using namespace authcap;
using Catch::Approx;

namespace {

double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

// H(q | rho sigma): rows of q weighted by the joint law of (x, u)
double entropy_joint_weighted(const CondDist& q, const CondDist& rho, const Dist& sigma) {
  double h = 0.0;
  for (std::size_t u = 0; u < sigma.size(); ++u)
    for (std::size_t x = 0; x < rho.out_size(); ++x) {
      const double w = sigma[u] * rho(x, u);
      if (w == 0.0) continue;
      for (std::size_t y = 0; y < q.out_size(); ++y)
        if (q(y, x) > 0.0) h -= w * q(y, x) * std::log2(q(y, x));
    }
  return h;
}

}  // namespace

TEST_CASE("entropy basics") {
  REQUIRE(entropy(bsc(0.5), Dist::uniform(2)) == Approx(1.0).margin(1e-12));
  REQUIRE(entropy(CondDist::identity(4), Dist::uniform(4)) == Approx(0.0).margin(1e-15));
  // closed-form binary entropy at 0.11
  REQUIRE(entropy(bsc(0.11), Dist::uniform(2)) ==
          Approx(binary_entropy(0.11)).margin(1e-12));
  REQUIRE(entropy(bsc(0.11), Dist::uniform(2)) == Approx(0.4999157).margin(1e-4));
}

TEST_CASE("entropy bounded by log of alphabet size") {
  auto g = testutil::rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + trial % 3;
    const CondDist rho = testutil::random_kernel(g, 2, k);
    const Dist sigma = testutil::random_dist(g, 2);
    const double h = entropy(rho, sigma);
    REQUIRE(h >= -1e-12);
    REQUIRE(h <= std::log2(double(k)) + 1e-10);
  }
}

TEST_CASE("mutual information basics") {
  REQUIRE(mutual_info(CondDist::identity(2), Dist::uniform(2)) ==
          Approx(1.0).margin(1e-12));
  // constant-output channel carries nothing
  REQUIRE(mutual_info(CondDist(2, 2, {1, 0, 1, 0}), Dist::uniform(2)) ==
          Approx(0.0).margin(1e-15));
  const double expected = 1.0 - binary_entropy(0.15);  // 0.3901597
  REQUIRE(mutual_info(bsc(0.15), Dist::uniform(2)) == Approx(expected).margin(1e-12));
  REQUIRE(mutual_info(bsc(0.15), Dist::uniform(2)) == Approx(0.3901597).margin(1e-4));
}

TEST_CASE("mutual information equals the entropy difference") {
  auto g = testutil::rng(37);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t ny = 2 + trial % 2;
    const CondDist q = testutil::random_kernel(g, 2, ny);
    const CondDist rho = testutil::random_kernel(g, 2, 2);
    const Dist sigma = testutil::random_dist(g, 2);
    const double mi = mutual_info(q, rho, sigma);
    REQUIRE(mi >= -1e-10);
    const double diff =
        entropy(compose(q, rho), sigma) - entropy_joint_weighted(q, rho, sigma);
    REQUIRE(mi == Approx(diff).margin(1e-10));
  }
}

TEST_CASE("mutual information as a divergence") {
  auto g = testutil::rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const CondDist q = testutil::random_kernel(g, 2, 2);
    const CondDist rho = testutil::random_kernel(g, 2, 2);
    const Dist sigma = testutil::random_dist(g, 2);
    const CondDist lhs = joint(q, rho);
    const CondDist qr = compose(q, rho);
    std::vector<double> flat(2 * 4);
    for (std::size_t u = 0; u < 2; ++u)
      for (std::size_t y = 0; y < 2; ++y)
        for (std::size_t x = 0; x < 2; ++x)
          flat[u * 4 + y * 2 + x] = qr(y, u) * rho(x, u);
    const CondDist rhs(2, 4, flat);
    REQUIRE(mutual_info(q, rho, sigma) ==
            Approx(kl_div(lhs, rhs, sigma)).margin(1e-9));
  }
}

TEST_CASE("divergence basics") {
  const CondDist rho = bsc(0.3);
  REQUIRE(kl_div(rho, rho, Dist::uniform(2)) == 0.0);
  // support escape
  REQUIRE(kl_div(bsc(0.3), CondDist::identity(2), Dist::uniform(2)) == kInf);
  const double d = 0.15 * std::log2(0.15 / 0.25) + 0.85 * std::log2(0.85 / 0.75);
  REQUIRE(kl_div(bsc(0.15), bsc(0.25), Dist::uniform(2)) == Approx(d).margin(1e-12));
  REQUIRE(kl_div(bsc(0.15), bsc(0.25), Dist::uniform(2)) ==
          Approx(0.0429413).margin(1e-4));
}

TEST_CASE("divergence separates kernels on the weighted support") {
  auto g = testutil::rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const CondDist a = testutil::random_kernel(g, 2, 3, 0.01);
    const CondDist b = testutil::random_kernel(g, 2, 3, 0.01);
    const Dist sigma = testutil::random_dist(g, 2, 0.01);
    const double d = kl_div(a, b, sigma);
    REQUIRE(d >= -1e-12);
    double max_gap = 0.0;
    for (std::size_t u = 0; u < 2; ++u)
      for (std::size_t x = 0; x < 3; ++x)
        max_gap = std::max(max_gap, std::abs(a(x, u) - b(x, u)));
    if (d < 1e-13) REQUIRE(max_gap < 1e-5);
    if (max_gap > 1e-3) REQUIRE(d > 1e-9);
  }
}

TEST_CASE("signed parts") {
  REQUIRE(pos_part(-0.3) == 0.0);
  REQUIRE(neg_part(-0.3) == -0.3);
  REQUIRE(pos_part(0.3) == 0.3);
  REQUIRE(neg_part(0.3) == 0.0);
  REQUIRE(pos_part(0.0) == 0.0);
  REQUIRE(neg_part(0.0) == 0.0);
  auto g = testutil::rng(47);
  for (int i = 0; i < 100; ++i) {
    const double a = testutil::unit(g) * 2.0 - 1.0;
    REQUIRE(pos_part(a) + neg_part(a) == a);
  }
}

TEST_CASE("secrecy functional, two-channel form") {
  auto g = testutil::rng(53);
  const CondDist rho = testutil::random_kernel(g, 2, 2);
  const Dist sigma = testutil::random_dist(g, 2);
  const CondDist mu = testutil::random_kernel(g, 2, 2);

  SECTION("equal channels cancel the information terms") {
    REQUIRE(s_ab(mu, mu, 0.7, -0.2, rho, sigma) ==
            Approx(0.7 + pos_part(-0.2)).margin(1e-12));
    REQUIRE(s_ab(mu, mu, 0.0, 0.0, rho, sigma) == Approx(0.0).margin(1e-12));
  }

  SECTION("matches an independent evaluation of the display") {
    for (int trial = 0; trial < 100; ++trial) {
      const CondDist m = testutil::random_kernel(g, 2, 2);
      const CondDist nu = testutil::random_kernel(g, 2, 3);
      const double a = testutil::unit(g) - 0.5, b = testutil::unit(g) - 0.5;
      const double inner =
          mutual_info(m, rho, sigma) + a - mutual_info(nu, rho, sigma);
      const double outer = mutual_info(compose(m, rho), sigma) + b -
                           mutual_info(compose(nu, rho), sigma);
      const double expected = inner + (outer > 0.0 ? outer : 0.0);
      REQUIRE(s_ab(m, nu, a, b, rho, sigma) == Approx(expected).margin(1e-10));
    }
  }
}

TEST_CASE("secrecy functional, single-channel form") {
  // nu carrying no information reduces to a + |b|^+
  const CondDist nu_const(2, 2, {1, 0, 1, 0});
  const CondDist rho = bsc(0.2);
  const Dist sigma = Dist::uniform(2);
  REQUIRE(s_ab_single(nu_const, 0.4, 0.3, rho, sigma) ==
          Approx(0.4 + 0.3).margin(1e-12));

  // identity nu through a uniform pair: both information terms are 1 and 0
  REQUIRE(s_ab_single(CondDist::identity(2), 0.0, 0.0, bsc(0.5), Dist::uniform(2)) ==
          Approx(-1.0).margin(1e-12));

  // definitional reduction: a mu with vanishing information terms
  auto g = testutil::rng(59);
  for (int trial = 0; trial < 50; ++trial) {
    const CondDist nu = testutil::random_kernel(g, 2, 2);
    const double a = testutil::unit(g) - 0.5, b = testutil::unit(g) - 0.5;
    REQUIRE(s_ab(nu_const, nu, a, b, rho, sigma) ==
            Approx(s_ab_single(nu, a, b, rho, sigma)).margin(1e-12));
  }
}

TEST_CASE("theorem-form secrecy equals the a=b=0 specialization") {
  auto g = testutil::rng(61);
  const DetCondDist sigma(CondDist(1, 2, {0.5, 0.5}));
  for (int trial = 0; trial < 100; ++trial) {
    const CondDist mu = testutil::random_kernel(g, 2, 2);
    const CondDist nu = testutil::random_kernel(g, 2, 2);
    const Dist tau({1.0});
    REQUIRE(secrecy(mu, nu, sigma, tau) ==
            s_ab(mu, nu, 0.0, 0.0, sigma.kernel(), tau));
    if (trial == 0)
      REQUIRE(secrecy(mu, mu, sigma, tau) == Approx(0.0).margin(1e-15));
  }
}
