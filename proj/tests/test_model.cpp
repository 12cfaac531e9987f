#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "model.hpp"

using namespace iabnet;

TEST_CASE("los probability is exactly one at or below the corner distance") {
  CHECK(los_probability(0.5, 0.027) == 1.0);
  CHECK(los_probability(17.999, 0.027) == 1.0);
  CHECK(los_probability(18.0, 0.027) == 1.0);
  CHECK(los_probability(18.000001, 0.027) < 1.0);
}

TEST_CASE("los probability matches the closed form beyond the corner") {
  const double beta = 0.027;
  for (double r : {19.0, 25.0, 50.0, 120.0, 400.0}) {
    const double e = std::exp(-beta * r);
    const double expected = (18.0 / r) * (1.0 - e) + e;
    CHECK(los_probability(r, beta) == doctest::Approx(expected).epsilon(1e-15));
    CHECK(nlos_probability(r, beta) ==
          doctest::Approx(1.0 - expected).epsilon(1e-12));
  }
}

TEST_CASE("los probability floors at 18/r for huge blockage rates") {
  // The decay term vanishes but the corner ratio survives: even an opaque
  // environment keeps a LoS chance at any finite distance.
  for (double r : {20.0, 40.0, 100.0, 500.0}) {
    CHECK(los_probability(r, 1e9) == doctest::Approx(18.0 / r).epsilon(1e-12));
  }
  // Zero blockage means LoS everywhere.
  CHECK(los_probability(1000.0, 0.0) == 1.0);
}

TEST_CASE("los probability rejects bad arguments") {
  CHECK_THROWS_AS(los_probability(0.0, 0.027), std::domain_error);
  CHECK_THROWS_AS(los_probability(-1.0, 0.027), std::domain_error);
  CHECK_THROWS_AS(los_probability(10.0, -0.1), std::domain_error);
}

TEST_CASE("path loss uses the per-state intercept and exponent") {
  NetworkConfig cfg;
  for (double r : {1.0, 10.0, 55.0, 300.0}) {
    CHECK(path_loss(r, LinkState::LoS, cfg) ==
          doctest::Approx(cfg.A_L * std::pow(r, -cfg.alpha_L)).epsilon(1e-15));
    CHECK(path_loss(r, LinkState::NLoS, cfg) ==
          doctest::Approx(cfg.A_NL * std::pow(r, -cfg.alpha_NL))
              .epsilon(1e-15));
  }
  CHECK(path_loss(10.0, LinkState::LoS, cfg) >
        path_loss(20.0, LinkState::LoS, cfg));
}

TEST_CASE("zipf pmf is normalized and follows the power law") {
  const int F = 1000;
  const double gamma_p = 0.6;
  double sum = 0.0;
  for (int f = 1; f <= F; ++f) sum += zipf_pmf(f, F, gamma_p);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  // Partition value frozen from a high-precision reference summation.
  CHECK(zipf_pmf(1, F, gamma_p) ==
        doctest::Approx(1.0 / 37.677592036819604).epsilon(1e-13));
  CHECK(zipf_pmf(2, F, gamma_p) / zipf_pmf(4, F, gamma_p) ==
        doctest::Approx(std::pow(2.0, gamma_p)).epsilon(1e-12));
}

TEST_CASE("cache hit ratio endpoints are exact") {
  NetworkConfig cfg;
  CHECK(cache_hit_ratio(0, cfg.F, cfg.gamma_p) == 0.0);
  CHECK(cache_hit_ratio(cfg.F, cfg.F, cfg.gamma_p) == 1.0);
}

TEST_CASE("cache hit ratio interior values match the reference sums") {
  NetworkConfig cfg;
  CHECK(cache_hit_ratio(100, cfg.F, cfg.gamma_p) ==
        doctest::Approx(0.36766650240862009).epsilon(1e-13));
  CHECK(cache_hit_ratio(300, cfg.F, cfg.gamma_p) ==
        doctest::Approx(0.59829623104457252).epsilon(1e-13));
  CHECK(cache_hit_ratio(400, cfg.F, cfg.gamma_p) ==
        doctest::Approx(0.67746050977133132).epsilon(1e-13));
  // Monotone in C.
  double prev = 0.0;
  for (int c = 0; c <= 1000; c += 100) {
    const double h = cache_hit_ratio(c, cfg.F, cfg.gamma_p);
    CHECK(h >= prev);
    prev = h;
  }
}

TEST_CASE("transmit powers follow the budget split") {
  NetworkConfig cfg;
  CHECK(sbs_transmit_power(cfg, 0) == doctest::Approx(2.25).epsilon(1e-15));
  CHECK(sbs_transmit_power(cfg, 100) ==
        doctest::Approx((9.1 - 0.1 - 2.5e-9 * 100 * 3.2e7) / 4.0)
            .epsilon(1e-14));
  // Depleted budget clamps at zero instead of going negative.
  CHECK(sbs_transmit_power(cfg, 1000) == 0.0);
  CHECK(mbs_transmit_power(cfg) ==
        doctest::Approx((610.0 - 10.16 - 2.5e-9 * 1000 * 3.2e7) / 15.13)
            .epsilon(1e-14));
}

TEST_CASE("max cache capacity marks the power cliff") {
  NetworkConfig cfg;
  CHECK(max_cache_capacity(cfg) == 112);
  CHECK(sbs_transmit_power(cfg, 111) > 0.0);

  cfg.file_bits = 6e6;
  CHECK(max_cache_capacity(cfg) == 600);
  CHECK(sbs_transmit_power(cfg, 599) > 0.0);
  CHECK(sbs_transmit_power(cfg, 600) == 0.0);

  cfg.file_bits = 3.2e7;
  cfg.P_s_tot = 0.05;  // below the fixed circuit power
  CHECK(max_cache_capacity(cfg) == 0);

  cfg.P_s_tot = 9.1;
  cfg.w_ca = 0.0;  // caching free: the library size is the only limit
  CHECK(max_cache_capacity(cfg) == cfg.F);
}

TEST_CASE("validate accepts the defaults and names offending keys") {
  NetworkConfig cfg;
  CHECK(validate(cfg).empty());

  NetworkConfig bad = cfg;
  bad.lambda_s = -1.0;
  CHECK(validate(bad).find("density.lambda_s") != std::string::npos);

  bad = cfg;
  bad.A_NL = 1e-3;  // NLoS stronger than LoS
  CHECK_FALSE(validate(bad).empty());

  bad = cfg;
  bad.alpha_NL = 1.5;  // shallower than the LoS exponent
  CHECK_FALSE(validate(bad).empty());

  bad = cfg;
  bad.C = 2000;  // beyond the library
  CHECK(validate(bad).find("cache.C") != std::string::npos);

  bad = cfg;
  bad.W = 0.0;
  CHECK(validate(bad).find("radio.W") != std::string::npos);

  bad = cfg;
  bad.beta = -0.5;
  CHECK(validate(bad).find("pathloss.beta") != std::string::npos);
}
