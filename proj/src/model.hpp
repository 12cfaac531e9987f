// Core scalar model: network parameters, blockage, path loss, Zipf demand,
// cache hit ratio, and the cache-aware power budget.
#pragma once

#include <cstdint>
#include <string>

namespace iabnet {

enum class LinkState { LoS, NLoS };

// Every model parameter in one validated record.  Field names follow the
// configuration keys documented in the CLI (section.key).
struct NetworkConfig {
  // density.*  (per m^2)
  double lambda_s = 1e-4;  // small-cell BS density
  double lambda_m = 1e-5;  // macro BS density
  double lambda_u = 3e-4;  // user density

  // radio.*
  double W = 4e8;        // total mmWave bandwidth, Hz
  double N0 = 3.162e-15; // noise power, W (see configs/defaults.cfg notes)

  // pathloss.*
  double A_L = 4.1686938347033464e-11;  // 10^-10.38, LoS intercept
  double alpha_L = 2.09;
  double A_NL = 2.8840315031266117e-15; // 10^-14.54, NLoS intercept
  double alpha_NL = 3.75;
  double beta = 0.027;  // blockage rate, per m

  // association.*  (dimensionless bias factors)
  double B_s = 10.0;
  double B_m = 1.0;

  // power.*
  double P_s_tot = 9.1;    // W
  double P_s_fc = 0.1;     // W, fixed circuit power
  double rho_s = 4.0;      // amplifier/cooling coefficient
  double P_m_tot = 610.0;  // W
  double P_m_fc = 10.16;   // W
  double rho_m = 15.13;
  double w_ca = 2.5e-9;    // caching power coefficient, W per bit

  // cache.*
  int F = 1000;            // library size, files
  int C = 100;             // SBS cache capacity, files
  double file_bits = 3.2e7;  // bits per file (4 MB)
  double gamma_p = 0.6;    // Zipf exponent
};

// Validates a config; returns empty string when valid, else a message naming
// the offending field.
std::string validate(const NetworkConfig& cfg);

// P_L(r) = min(18/r, 1)(1 - e^{-beta r}) + e^{-beta r}; exactly 1 for r <= 18.
double los_probability(double r, double beta);
inline double nlos_probability(double r, double beta) {
  return 1.0 - los_probability(r, beta);
}

// Two-state distance gain A_sigma * r^{-alpha_sigma}.
double path_loss(double r, LinkState state, const NetworkConfig& cfg);

// Zipf popularity pmf over a library of F files.
double zipf_pmf(int f, int F, double gamma_p);

// Probability a request hits a cache holding the C most popular files.
double cache_hit_ratio(int C, int F, double gamma_p);
inline double cache_hit_ratio(const NetworkConfig& cfg) {
  return cache_hit_ratio(cfg.C, cfg.F, cfg.gamma_p);
}

// SBS transmit power after circuit and caching power are taken from the
// budget, clamped at zero; non-increasing in C.
double sbs_transmit_power(const NetworkConfig& cfg, int C);
inline double sbs_transmit_power(const NetworkConfig& cfg) {
  return sbs_transmit_power(cfg, cfg.C);
}

// MBS transmit power; the macro tier caches the whole library, so this does
// not depend on C.
double mbs_transmit_power(const NetworkConfig& cfg);

// Largest cache capacity the SBS power budget supports, capped at F.
int max_cache_capacity(const NetworkConfig& cfg);

}  // namespace iabnet
