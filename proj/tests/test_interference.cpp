#include <cmath>

#include "doctest.h"
#include "geometry.hpp"
#include "interference.hpp"
#include "model.hpp"

using namespace iabnet;

TEST_CASE("laplace transform is one at s=0 and with no interferers") {
  NetworkConfig cfg;
  for (Tier tier : {Tier::SBS, Tier::MBS, Tier::Backhaul}) {
    CHECK(laplace_interference({{tier, LinkState::LoS}, 0.0, 30.0}, cfg) ==
          1.0);
  }
  NetworkConfig empty = cfg;
  empty.lambda_s = 0.0;
  empty.lambda_m = 0.0;
  CHECK(laplace_interference({{Tier::SBS, LinkState::LoS}, 50.0, 30.0},
                             empty) == 1.0);
}

TEST_CASE("laplace transform decreases in s and in density") {
  NetworkConfig cfg;
  const TierLink link{Tier::SBS, LinkState::LoS};
  double prev = 1.0;
  for (double s : {1e2, 1e3, 1e4, 1e5, 1e6}) {
    const double v = laplace_interference({link, s, 30.0}, cfg);
    CHECK(v <= prev + 1e-12);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    prev = v;
  }

  NetworkConfig dense = cfg;
  dense.lambda_s *= 4.0;
  CHECK(laplace_interference({link, 1e4, 30.0}, dense) <
        laplace_interference({link, 1e4, 30.0}, cfg));
}

TEST_CASE("backhaul interference ignores the small-cell tier") {
  NetworkConfig a;
  NetworkConfig b = a;
  b.lambda_s = 7e-4;  // only MBS transmitters interfere with the backhaul
  const LaplaceQuery q{{Tier::Backhaul, LinkState::LoS}, 1e4, 120.0};
  CHECK(laplace_interference(q, a) ==
        doctest::Approx(laplace_interference(q, b)).epsilon(1e-12));

  // User-serving links do feel the small-cell tier.
  const LaplaceQuery qu{{Tier::SBS, LinkState::LoS}, 1e4, 30.0};
  CHECK(laplace_interference(qu, a) != laplace_interference(qu, b));
}

TEST_CASE("tight and loose tolerances agree within the loose budget") {
  NetworkConfig cfg;
  const LaplaceQuery q{{Tier::MBS, LinkState::LoS}, 5e4, 80.0};
  QuadSpec loose;
  loose.rel_tol = 1e-4;
  QuadSpec tight;
  tight.rel_tol = 1e-10;
  const double vl = laplace_interference(q, cfg, loose);
  const double vt = laplace_interference(q, cfg, tight);
  CHECK(std::fabs(vl - vt) <= 1e-4 * vt + 1e-12);
}

TEST_CASE("interference-limited transform mirrors the general trends") {
  NetworkConfig cfg;
  cfg.lambda_s = 1e-3;
  double prev = 1.0;
  for (double s : {1e2, 1e3, 1e4, 1e5}) {
    const double v = laplace_interference_limited(s, 20.0, cfg);
    CHECK(v <= prev + 1e-12);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    prev = v;
  }
  CHECK(laplace_interference_limited(0.0, 20.0, cfg) == 1.0);

  // A dead small-cell tier leaves nothing to bound.
  NetworkConfig dead = cfg;
  dead.C = dead.F;
  CHECK(laplace_interference_limited(1e4, 20.0, dead) == 1.0);
}

TEST_CASE("laplace matches a direct fixed-step reference on one point") {
  // Independent oracle: the same exponent evaluated by plain Simpson
  // panels over the truncated domain, far from the adaptive code paths.
  NetworkConfig cfg;
  const TierLink link{Tier::SBS, LinkState::LoS};
  const double r = 30.0;
  const double s = 2e4;

  const double e_s = biased_power(Tier::SBS, cfg);
  const double e_m = biased_power(Tier::MBS, cfg);
  struct Pair {
    double lambda, e_j, a_tau, alpha_tau;
    LinkState tau;
    Tier tier;
  };
  const Pair pairs[4] = {
      {cfg.lambda_s, e_s, cfg.A_L, cfg.alpha_L, LinkState::LoS, Tier::SBS},
      {cfg.lambda_s, e_s, cfg.A_NL, cfg.alpha_NL, LinkState::NLoS, Tier::SBS},
      {cfg.lambda_m, e_m, cfg.A_L, cfg.alpha_L, LinkState::LoS, Tier::MBS},
      {cfg.lambda_m, e_m, cfg.A_NL, cfg.alpha_NL, LinkState::NLoS, Tier::MBS},
  };
  const double e_k = e_s;
  const double a_sigma = cfg.A_L;
  double exponent = 0.0;
  for (const Pair& p : pairs) {
    const double lower =
        exclusion_distance(link, p.tier, p.tau, r, cfg);
    const double ratio = (e_k * a_sigma) / (s * p.e_j * p.a_tau);
    auto f = [&](double u) {
      const double blockage = p.tau == LinkState::LoS
                                  ? los_probability(u, cfg.beta)
                                  : nlos_probability(u, cfg.beta);
      return blockage * u / (1.0 + ratio * std::pow(u, p.alpha_tau));
    };
    // Simpson with 2^20 panels out to a far cutoff.
    const double upper = 4e6;
    const long long n = 1 << 21;
    const double h = (upper - lower) / static_cast<double>(n);
    double sum = f(lower) + f(upper);
    for (long long i = 1; i < n; ++i)
      sum += f(lower + h * static_cast<double>(i)) * (i % 2 == 1 ? 4.0 : 2.0);
    exponent += p.lambda * sum * h / 3.0;
  }
  const double reference = std::exp(-2.0 * 3.141592653589793 * exponent);
  const double value = laplace_interference({link, s, r}, cfg);
  CHECK(value == doctest::Approx(reference).epsilon(2e-5));
}
