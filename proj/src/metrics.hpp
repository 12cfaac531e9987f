// Network-level metrics: average potential throughput (APT), user
// spectral-efficiency distributions, area spectral efficiency (ASE) with
// noise-limited and interference-limited variants, optimal bandwidth
// partition, and saved spectrum.
#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "coverage.hpp"
#include "curve.hpp"
#include "geometry.hpp"
#include "model.hpp"

namespace iabnet {

struct PartitionPoint {
  double eta;  // access bandwidth fraction in [0, 1]
  int C;       // SBS cache capacity, files
};

struct AptResult {
  // SBS cases are keyed (access state, backhaul state); MBS by access state.
  double sbs_ll = 0, sbs_ln = 0, sbs_nl = 0, sbs_nn = 0;
  double mbs_l = 0, mbs_nl = 0;
  double total = 0;  // bit/s per m^2
};

struct AseResult {
  double sbs = 0, mbs = 0;
  double total = 0;  // bit/s/Hz per m^2
};

enum class AseVariant { General, NoiseLimited, InterferenceLimited };
enum class Objective { Apt, Ase };

// Coverage-vs-threshold curves for one (config, cache, mode) combination.
struct SinrCurves {
  Curve s_l, s_nl;    // user -> SBS access
  Curve m_l, m_nl;    // user -> MBS access
  Curve bh_l, bh_nl;  // SBS -> MBS backhaul
  double km = -1.0;   // cached MBS spectral-efficiency integral
};

struct EngineOptions {
  QuadSpec coverage_spec{1e-5, 1e-9, 500000, 1e-10};  // marginal integrals
  CurveBuildOptions curve_options{};
  double rho_rel_tol = 1e-6;  // spectral-efficiency integrals over curves
};

// Evaluation engine: owns a config and lazily builds/caches SINR curves per
// (cache capacity, coverage mode).  Distinct PartitionPoints can be
// evaluated concurrently; the cache is mutex-guarded.
class Engine {
 public:
  explicit Engine(const NetworkConfig& cfg, EngineOptions opt = {});

  const NetworkConfig& config() const { return cfg_; }

  // Direct (non-curve) quantities.
  CoverageResult coverage_of(Tier tier, double gamma,
                             CoverageMode mode = CoverageMode::General) const;
  AptResult apt(const PartitionPoint& p, double gamma0);
  AseResult ase(const PartitionPoint& p,
                AseVariant variant = AseVariant::General);
  double optimal_partition(int C, Objective objective, double gamma0 = 0.0,
                           AseVariant variant = AseVariant::General);
  double saved_spectrum(int C);

  // Curve access (shared across threads once built).
  std::shared_ptr<const SinrCurves> curves(int C, CoverageMode mode);

 private:
  struct AptCoverage {
    double s_l, s_nl, m_l, m_nl, bh_l, bh_nl;
  };
  AptCoverage apt_coverage(int C, double gamma0);
  AptResult apt_from_coverage(const AptCoverage& cov, double eta, int C,
                              double gamma0) const;
  AseResult ase_from_curves(const SinrCurves& general,
                            const SinrCurves* intf_access, double eta, int C,
                            AseVariant variant) const;

  NetworkConfig cfg_;
  EngineOptions opt_;
  std::mutex mu_;
  std::map<std::pair<int, int>, std::shared_ptr<const SinrCurves>> curves_;
  std::map<std::pair<int, long long>, AptCoverage> apt_cov_;
};

// Conditional user spectral-efficiency CCDFs (distances pinned).
// SBS-served users: four (access state, backhaul state) cases.
struct SbsRateCcdf {
  double ll, ln, nl, nn;
};
SbsRateCcdf rate_ccdf_sbs(double rho, double r_s, double r_bh,
                          const PartitionPoint& p, const NetworkConfig& cfg,
                          const QuadSpec& spec = {});
// MBS-served users: two access-state cases.
struct MbsRateCcdf {
  double l, nl;
};
MbsRateCcdf rate_ccdf_mbs(double rho, double r_m, const PartitionPoint& p,
                          const NetworkConfig& cfg,
                          const QuadSpec& spec = {});

}  // namespace iabnet
