#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "metrics.hpp"
#include "model.hpp"
#include "quadrature.hpp"

using namespace iabnet;

namespace {

Engine& default_engine() {
  static Engine eng{NetworkConfig{}};
  return eng;
}

}  // namespace

TEST_CASE("apt is zero at eta=0 and for the SBS tier at eta=1") {
  Engine& eng = default_engine();
  const double gamma0 = db_to_linear(10.0);
  const AptResult at0 = eng.apt({0.0, 100}, gamma0);
  CHECK(at0.total == 0.0);

  // With any cache misses left, eta=1 starves the backhaul completely.
  const AptResult at1 = eng.apt({1.0, 100}, gamma0);
  CHECK(at1.sbs_ll == 0.0);
  CHECK(at1.sbs_ln == 0.0);
  CHECK(at1.sbs_nl == 0.0);
  CHECK(at1.sbs_nn == 0.0);
  CHECK(at1.mbs_l > 0.0);
}

TEST_CASE("apt components are non-negative and sum to the total") {
  Engine& eng = default_engine();
  const AptResult r = eng.apt({0.4, 100}, db_to_linear(10.0));
  for (double v : {r.sbs_ll, r.sbs_ln, r.sbs_nl, r.sbs_nn, r.mbs_l, r.mbs_nl})
    CHECK(v >= 0.0);
  CHECK(r.total == doctest::Approx(r.sbs_ll + r.sbs_ln + r.sbs_nl + r.sbs_nn +
                                   r.mbs_l + r.mbs_nl)
                       .epsilon(1e-12));
}

TEST_CASE("apt collapses to zero at and beyond the cache power budget") {
  Engine& eng = default_engine();
  const double gamma0 = db_to_linear(10.0);
  CHECK(max_cache_capacity(eng.config()) == 112);
  CHECK(eng.apt({0.5, 111}, gamma0).total > 0.0);
  CHECK(eng.apt({0.5, 112}, gamma0).total == 0.0);
  CHECK(eng.apt({0.5, 500}, gamma0).total == 0.0);
  CHECK(eng.apt({0.5, 1000}, gamma0).total == 0.0);
}

TEST_CASE("apt regression anchor at the default operating point") {
  // Cross-checked against an independent prototype of the same formulas.
  Engine& eng = default_engine();
  const AptResult r = eng.apt({0.5, 100}, db_to_linear(5.0));
  CHECK(r.total == doctest::Approx(1319.7).epsilon(2e-3));
}

TEST_CASE("rate ccdfs are one at rho=0, within [0,1], and non-increasing") {
  NetworkConfig cfg;
  const PartitionPoint p{0.5, 100};
  const SbsRateCcdf at0 = rate_ccdf_sbs(0.0, 20.0, 150.0, p, cfg);
  CHECK(at0.ll == 1.0);
  CHECK(at0.ln == 1.0);
  CHECK(at0.nl == 1.0);
  CHECK(at0.nn == 1.0);
  const MbsRateCcdf m0 = rate_ccdf_mbs(0.0, 80.0, p, cfg);
  CHECK(m0.l == 1.0);
  CHECK(m0.nl == 1.0);

  double prev_ll = 1.0, prev_ml = 1.0;
  for (double rho : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const SbsRateCcdf s = rate_ccdf_sbs(rho, 20.0, 150.0, p, cfg);
    const MbsRateCcdf m = rate_ccdf_mbs(rho, 80.0, p, cfg);
    for (double v : {s.ll, s.ln, s.nl, s.nn, m.l, m.nl}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    CHECK(s.ll <= prev_ll + 1e-12);
    CHECK(m.l <= prev_ml + 1e-12);
    prev_ll = s.ll;
    prev_ml = m.l;
  }
}

TEST_CASE("wider access share raises the conditional rate ccdf") {
  NetworkConfig cfg;
  const double rho = 1.0;
  const MbsRateCcdf narrow = rate_ccdf_mbs(rho, 80.0, {0.5, 100}, cfg);
  const MbsRateCcdf wide = rate_ccdf_mbs(rho, 80.0, {1.0, 100}, cfg);
  CHECK(wide.l >= narrow.l);
  CHECK(wide.nl >= narrow.nl);
  // eta = 0 leaves no access bandwidth at all.
  const MbsRateCcdf none = rate_ccdf_mbs(rho, 80.0, {0.0, 100}, cfg);
  CHECK(none.l == 0.0);
}

TEST_CASE("ase scales linearly in the user density prefactor") {
  NetworkConfig cfg;
  cfg.lambda_u = 0.0;
  Engine eng{cfg};
  const AseResult r = eng.ase({0.5, 100});
  CHECK(r.total == 0.0);
}

TEST_CASE("ase regression anchors at eta=0.5") {
  Engine& eng = default_engine();
  CHECK(eng.ase({0.5, 100}).total == doctest::Approx(8.2024e-5).epsilon(2e-3));
  CHECK(eng.ase({0.5, 0}).total == doctest::Approx(5.0677e-5).epsilon(2e-3));
}

TEST_CASE("cache growth trades the small-cell ase term for the macro term") {
  Engine& eng = default_engine();
  const AseResult a0 = eng.ase({0.5, 0});
  const AseResult a100 = eng.ase({0.5, 100});
  const AseResult a112 = eng.ase({0.5, 112});  // last capacity with power
  const AseResult a113 = eng.ase({0.5, 113});  // budget exhausted
  CHECK(a100.total > a0.total);  // cache relief loosens the backhaul throttle
  // Less small-cell power means less small-cell service but also less
  // interference onto the macro tier, whose term grows monotonically.
  CHECK(a100.sbs > a112.sbs);
  CHECK(a112.sbs > 0.0);
  CHECK(a113.sbs == 0.0);  // radio is off past the budget
  CHECK(a100.mbs > a0.mbs);
  CHECK(a112.mbs > a100.mbs);
  CHECK(a113.mbs > a112.mbs);
  CHECK(a113.total > 0.0);
}

TEST_CASE("a full cache makes the SBS term independent of the backhaul") {
  Engine& eng = default_engine();
  const PartitionPoint p{0.6, 1000};  // p_h = 1
  const AseResult full = eng.ase(p);
  // Reconstruct the SBS part from the access curves alone: if the backhaul
  // factor were still applied, its mass (< 1) would shrink this value.
  auto curves = eng.curves(p.C, CoverageMode::General);
  const double ln2 = std::log(2.0);
  auto g = [&](double rho) {
    const double tau = std::expm1(rho * ln2 / p.eta);
    return curves->s_l.eval(tau) + curves->s_nl.eval(tau);
  };
  QuadSpec spec;
  spec.rel_tol = 1e-8;
  double end = 1e-3;
  while (g(end) > 1e-14) end *= 2.0;
  const double access_only =
      eng.config().lambda_u * integrate(g, 0.0, end, spec).value;
  CHECK(full.sbs == doctest::Approx(access_only).epsilon(1e-4));
}

TEST_CASE("noise-limited ase upper-bounds the general one") {
  Engine& eng = default_engine();
  for (double eta : {0.3, 0.6}) {
    const AseResult gen = eng.ase({eta, 100});
    const AseResult noise = eng.ase({eta, 100}, AseVariant::NoiseLimited);
    CHECK(noise.sbs >= gen.sbs - 1e-12);
    CHECK(noise.mbs >= gen.mbs - 1e-12);
    CHECK(noise.total >= gen.total - 1e-12);
  }
}

TEST_CASE("interference-limited ase keeps the general MBS term") {
  Engine& eng = default_engine();
  const AseResult gen = eng.ase({0.5, 100});
  const AseResult intf = eng.ase({0.5, 100}, AseVariant::InterferenceLimited);
  CHECK(intf.mbs == doctest::Approx(gen.mbs).epsilon(1e-12));
  CHECK(intf.sbs >= 0.0);
}

TEST_CASE("optimal partition saturates for a cache-complete single tier") {
  NetworkConfig cfg;
  cfg.lambda_m = 0.0;  // no macro tier: backhaul truly irrelevant
  cfg.w_ca = 0.0;      // caching free, so a full cache keeps the radio on
  cfg.C = cfg.F;       // every request served from cache
  Engine eng{cfg};
  CHECK(eng.optimal_partition(cfg.F, Objective::Ase) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("optimal partition breaks ties toward smaller eta") {
  NetworkConfig cfg;
  cfg.lambda_u = 0.0;  // objective identically zero
  Engine eng{cfg};
  CHECK(eng.optimal_partition(100, Objective::Ase) == 0.0);
}

TEST_CASE("saved spectrum is zero at the empty cache by construction") {
  Engine& eng = default_engine();
  CHECK(eng.saved_spectrum(0) == 0.0);
}

TEST_CASE("partition points are validated") {
  Engine& eng = default_engine();
  CHECK_THROWS_AS(eng.apt({-0.1, 100}, 10.0), std::domain_error);
  CHECK_THROWS_AS(eng.apt({1.1, 100}, 10.0), std::domain_error);
  CHECK_THROWS_AS(eng.apt({0.5, -1}, 10.0), std::domain_error);
  CHECK_THROWS_AS(eng.apt({0.5, 5000}, 10.0), std::domain_error);
  CHECK_THROWS_AS(eng.ase({0.5, -2}), std::domain_error);
  CHECK_THROWS_AS(rate_ccdf_sbs(-1.0, 20.0, 150.0, {0.5, 100}, {}),
                  std::domain_error);
}
