#include "model.hpp"

#include <cmath>
#include <stdexcept>

namespace iabnet {

namespace {

bool bad(double v) { return !std::isfinite(v); }

// Kahan-compensated sum of f^{-gamma_p} for f in [1, n], summed smallest
// term first so the partial pmf stays accurate for libraries up to 1e6 files.
double zipf_partial_sum(int n, double gamma_p) {
  double sum = 0.0, comp = 0.0;
  for (int f = n; f >= 1; --f) {
    const double term = std::pow(static_cast<double>(f), -gamma_p) - comp;
    const double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  return sum;
}

}  // namespace

std::string validate(const NetworkConfig& cfg) {
  const struct {
    const char* name;
    double value;
  } finite_fields[] = {
      {"density.lambda_s", cfg.lambda_s}, {"density.lambda_m", cfg.lambda_m},
      {"density.lambda_u", cfg.lambda_u}, {"radio.W", cfg.W},
      {"radio.N0", cfg.N0},               {"pathloss.A_L", cfg.A_L},
      {"pathloss.alpha_L", cfg.alpha_L},  {"pathloss.A_NL", cfg.A_NL},
      {"pathloss.alpha_NL", cfg.alpha_NL}, {"pathloss.beta", cfg.beta},
      {"association.B_s", cfg.B_s},       {"association.B_m", cfg.B_m},
      {"power.P_s_tot", cfg.P_s_tot},     {"power.P_s_fc", cfg.P_s_fc},
      {"power.rho_s", cfg.rho_s},         {"power.P_m_tot", cfg.P_m_tot},
      {"power.P_m_fc", cfg.P_m_fc},       {"power.rho_m", cfg.rho_m},
      {"power.w_ca", cfg.w_ca},           {"cache.file_bits", cfg.file_bits},
      {"cache.gamma_p", cfg.gamma_p},
  };
  for (const auto& f : finite_fields)
    if (bad(f.value)) return std::string(f.name) + ": not a finite number";

  if (cfg.lambda_s < 0) return "density.lambda_s: must be >= 0";
  if (cfg.lambda_m < 0) return "density.lambda_m: must be >= 0";
  if (cfg.lambda_u < 0) return "density.lambda_u: must be >= 0";
  if (cfg.W <= 0) return "radio.W: must be > 0";
  if (cfg.N0 < 0) return "radio.N0: must be >= 0";
  if (cfg.A_L <= 0) return "pathloss.A_L: must be > 0";
  if (cfg.A_NL <= 0) return "pathloss.A_NL: must be > 0";
  if (cfg.A_NL > cfg.A_L) return "pathloss.A_NL: must not exceed A_L";
  if (cfg.alpha_L <= 0) return "pathloss.alpha_L: must be > 0";
  if (cfg.alpha_NL < cfg.alpha_L)
    return "pathloss.alpha_NL: must be >= alpha_L";
  if (cfg.beta < 0) return "pathloss.beta: must be >= 0";
  if (cfg.B_s <= 0) return "association.B_s: must be > 0";
  if (cfg.B_m <= 0) return "association.B_m: must be > 0";
  if (cfg.P_s_tot < 0) return "power.P_s_tot: must be >= 0";
  if (cfg.P_s_fc < 0) return "power.P_s_fc: must be >= 0";
  if (cfg.P_s_fc > cfg.P_s_tot) return "power.P_s_fc: exceeds P_s_tot";
  if (cfg.rho_s <= 0) return "power.rho_s: must be > 0";
  if (cfg.P_m_tot < 0) return "power.P_m_tot: must be >= 0";
  if (cfg.P_m_fc < 0) return "power.P_m_fc: must be >= 0";
  if (cfg.P_m_fc > cfg.P_m_tot) return "power.P_m_fc: exceeds P_m_tot";
  if (cfg.rho_m <= 0) return "power.rho_m: must be > 0";
  if (cfg.w_ca < 0) return "power.w_ca: must be >= 0";
  if (cfg.F < 1) return "cache.F: must be >= 1";
  if (cfg.C < 0) return "cache.C: must be >= 0";
  if (cfg.C > cfg.F) return "cache.C: must not exceed F";
  if (cfg.file_bits <= 0) return "cache.file_bits: must be > 0";
  if (cfg.gamma_p < 0) return "cache.gamma_p: must be >= 0";
  return {};
}

double los_probability(double r, double beta) {
  if (!(r > 0)) throw std::domain_error("los_probability: r must be > 0");
  if (!(beta >= 0))
    throw std::domain_error("los_probability: beta must be >= 0");
  if (r <= 18.0) return 1.0;
  const double e = std::exp(-beta * r);
  return (18.0 / r) * (1.0 - e) + e;
}

double path_loss(double r, LinkState state, const NetworkConfig& cfg) {
  if (!(r > 0)) throw std::domain_error("path_loss: r must be > 0");
  return state == LinkState::LoS ? cfg.A_L * std::pow(r, -cfg.alpha_L)
                                 : cfg.A_NL * std::pow(r, -cfg.alpha_NL);
}

double zipf_pmf(int f, int F, double gamma_p) {
  if (F < 1) throw std::domain_error("zipf_pmf: F must be >= 1");
  if (f < 1 || f > F) throw std::domain_error("zipf_pmf: f out of [1, F]");
  return std::pow(static_cast<double>(f), -gamma_p) /
         zipf_partial_sum(F, gamma_p);
}

double cache_hit_ratio(int C, int F, double gamma_p) {
  if (F < 1) throw std::domain_error("cache_hit_ratio: F must be >= 1");
  if (C < 0 || C > F)
    throw std::domain_error("cache_hit_ratio: C out of [0, F]");
  if (C == 0) return 0.0;
  if (C == F) return 1.0;
  return zipf_partial_sum(C, gamma_p) / zipf_partial_sum(F, gamma_p);
}

double sbs_transmit_power(const NetworkConfig& cfg, int C) {
  const double raw =
      (cfg.P_s_tot - cfg.P_s_fc - cfg.w_ca * static_cast<double>(C) *
                                      cfg.file_bits) / cfg.rho_s;
  return raw > 0.0 ? raw : 0.0;
}

double mbs_transmit_power(const NetworkConfig& cfg) {
  const double raw =
      (cfg.P_m_tot - cfg.P_m_fc - cfg.w_ca * static_cast<double>(cfg.F) *
                                      cfg.file_bits) / cfg.rho_m;
  return raw > 0.0 ? raw : 0.0;
}

int max_cache_capacity(const NetworkConfig& cfg) {
  const double per_file = cfg.w_ca * cfg.file_bits;
  const double budget = cfg.P_s_tot - cfg.P_s_fc;
  if (per_file <= 0.0) return cfg.F;  // caching is free: capped by library
  if (budget <= 0.0) return 0;
  // Nudge before flooring so exactly-divisible budgets land on the integer.
  const double c = std::floor(budget / per_file + 1e-6);
  if (c >= static_cast<double>(cfg.F)) return cfg.F;
  return c > 0 ? static_cast<int>(c) : 0;
}

}  // namespace iabnet
