// Independent Monte-Carlo ground truth: finite-window PPP drop simulator
// realizing the network model end-to-end (placement, blockage, Rayleigh
// fading, max-biased-power association, cache hit/miss, SINR, delivered
// rate) with deterministic, parallelizable per-drop RNG streams.
#pragma once

#include <cstdint>
#include <vector>

#include "geometry.hpp"
#include "metrics.hpp"
#include "model.hpp"

namespace iabnet {

struct Estimate {
  double mean = 0.0;
  double half_width = 0.0;  // 95% confidence half-width
};

struct SimSpec {
  double window_radius = 0.0;  // metres; 0 selects the edge-effect bound
  long long drops = 10000;
  std::uint64_t seed = 1;
  int jobs = 1;
  // Estimator set evaluated during the drops.
  std::vector<double> gammas;      // linear SINR thresholds for coverage
  PartitionPoint point{0.5, 100};  // for the APT / ASE estimators
  double gamma0 = 10.0;            // linear APT threshold
};

// One typical-user realization (reduced in drop-index order).
struct DropOutcome {
  std::uint8_t assoc = 0;      // 0 none, 1 SBS, 2 MBS
  std::uint8_t acc_state = 0;  // 0 LoS, 1 NLoS (valid when assoc != 0)
  std::uint8_t bh_present = 0;
  std::uint8_t bh_state = 0;
  std::uint8_t cache_hit = 0;
  float serving_distance = 0.0f;
  double sinr_acc = 0.0;  // linear access SINR
  double sinr_bh = 0.0;   // linear backhaul SINR of the typical SBS
  double delivered_se = 0.0;  // bit/s/Hz, min-of-links convention
};

struct SimReport {
  long long drops = 0;
  double window_radius = 0.0;
  // Typical-user association fractions.
  Estimate assoc_sbs_los, assoc_sbs_nlos, assoc_mbs_los, assoc_mbs_nlos,
      assoc_none;
  Estimate bh_los;  // LoS fraction of the typical SBS's backhaul link
  // Joint coverage P[association case and SINR > gamma], per gamma.
  std::vector<double> gammas;
  std::vector<Estimate> cov_sbs_los, cov_sbs_nlos, cov_mbs_los, cov_mbs_nlos,
      cov_bh_los, cov_bh_nlos;
  Estimate apt;  // bit/s per m^2 at (point, gamma0)
  Estimate ase;  // bit/s/Hz per m^2 at point
};

// Smallest window radius that keeps edge effects negligible for the
// configured densities.
double min_window_radius(const NetworkConfig& cfg);

// Runs spec.drops independent drops and reduces the estimators in drop-index
// order (identical output for any spec.jobs value).
SimReport run_drops(const SimSpec& spec, const NetworkConfig& cfg);

// Estimates E[exp(-s I)] for the interference seen by a receiver served over
// `serving` at distance r, with interferers thinned exactly as the analytic
// construction prescribes (per-state exclusion radii around the receiver).
Estimate empirical_laplace(const TierLink& serving, double s, double r,
                           const SimSpec& spec, const NetworkConfig& cfg);

// Conditional coverage P[SINR > gamma | serving link, distance r] estimated
// with the serving node placed deterministically and fading integrated out.
Estimate mc_conditional_coverage(const TierLink& serving, double gamma,
                                 double r, const SimSpec& spec,
                                 const NetworkConfig& cfg);

}  // namespace iabnet
