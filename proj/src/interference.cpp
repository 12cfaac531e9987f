#include "interference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace iabnet {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559005768;

struct InterfererTerm {
  Tier tier;
  LinkState state;
};

// One interferer-pair integral: lambda_j * Int_{lower}^{inf}
// P_tau(u) * u / (1 + ratio * u^{alpha_tau}) du, where
// ratio = (E_k A_sigma) / (s E_j A_tau).  `blockage` selects whether the
// state-probability thinning P_tau(u) is applied.
double pair_integral(double lambda_j, double ratio, double alpha_tau,
                     LinkState tau, bool blockage, double lower,
                     const NetworkConfig& cfg, const QuadSpec& spec) {
  if (lambda_j <= 0.0) return 0.0;
  auto integrand = [&](double u) {
    const double denom = 1.0 + ratio * std::pow(u, alpha_tau);
    double p = 1.0;
    if (blockage)
      p = tau == LinkState::LoS ? los_probability(u, cfg.beta)
                                : nlos_probability(u, cfg.beta);
    return p * u / denom;
  };
  // The integrand turns over where ratio * u^alpha ~ 1; split past both that
  // crossover and the lower limit so the tail map sees pure decay.
  const double crossover =
      ratio > 0 ? std::pow(1.0 / ratio, 1.0 / alpha_tau) : lower;
  const double split = 4.0 * std::max({lower, crossover, 25.0});
  const auto res = integrate_semi_infinite(integrand, lower, spec, split);
  return lambda_j * res.value;
}

}  // namespace

double laplace_interference(const LaplaceQuery& q, const NetworkConfig& cfg,
                            const QuadSpec& spec) {
  if (!(q.r > 0))
    throw std::domain_error("laplace_interference: r must be > 0");
  if (!(q.s_argument >= 0))
    throw std::domain_error("laplace_interference: s must be >= 0");
  if (q.s_argument == 0.0) return 1.0;

  const double e_k = biased_power(q.serving.tier, cfg);
  if (e_k == 0.0) return 1.0;  // no serving signal; coverage handles this
  const double a_sigma =
      q.serving.state == LinkState::LoS ? cfg.A_L : cfg.A_NL;

  // User-serving links see both tiers; the backhaul receiver shares the
  // backhaul band with MBS transmitters only.
  const InterfererTerm all_pairs[] = {{Tier::SBS, LinkState::LoS},
                                      {Tier::SBS, LinkState::NLoS},
                                      {Tier::MBS, LinkState::LoS},
                                      {Tier::MBS, LinkState::NLoS}};
  const bool backhaul = q.serving.tier == Tier::Backhaul;
  const InterfererTerm* begin = backhaul ? all_pairs + 2 : all_pairs;
  const InterfererTerm* end = all_pairs + 4;

  double exponent_sum = 0.0;
  for (const InterfererTerm* it = begin; it != end; ++it) {
    const double e_j = biased_power(it->tier, cfg);
    const double lambda_j = tier_density(it->tier, cfg);
    if (e_j == 0.0 || lambda_j <= 0.0) continue;
    const double a_tau = it->state == LinkState::LoS ? cfg.A_L : cfg.A_NL;
    const double alpha_tau =
        it->state == LinkState::LoS ? cfg.alpha_L : cfg.alpha_NL;
    const double lower =
        exclusion_distance(q.serving, it->tier, it->state, q.r, cfg);
    const double ratio = (e_k * a_sigma) / (q.s_argument * e_j * a_tau);
    exponent_sum += pair_integral(lambda_j, ratio, alpha_tau, it->state,
                                  /*blockage=*/true, lower, cfg, spec);
  }
  return std::exp(-kTwoPi * exponent_sum);
}

double laplace_interference_limited(double s_argument, double r,
                                    const NetworkConfig& cfg,
                                    const QuadSpec& spec) {
  if (!(r > 0))
    throw std::domain_error("laplace_interference_limited: r must be > 0");
  if (!(s_argument >= 0))
    throw std::domain_error("laplace_interference_limited: s must be >= 0");
  if (s_argument == 0.0) return 1.0;

  const double p_s = sbs_transmit_power(cfg);
  const double p_m = mbs_transmit_power(cfg);
  if (p_s == 0.0) return 1.0;  // silent SBS tier: handled by the caller
  const double e_s = p_s * cfg.B_s;
  const double e_m = p_m * cfg.B_m;

  double exponent_sum = 0.0;
  // Same-tier term: biased powers cancel, lower limit is the serving
  // distance itself.
  exponent_sum +=
      pair_integral(cfg.lambda_s, 1.0 / s_argument, cfg.alpha_L,
                    LinkState::LoS, /*blockage=*/false, r, cfg, spec);
  // MBS term: raw transmit-power ratio in the lower limit, biased powers in
  // the integrand.
  if (p_m > 0.0 && cfg.lambda_m > 0.0) {
    const double lower = std::pow(p_m / p_s, 1.0 / cfg.alpha_L) * r;
    const double ratio = e_s / (s_argument * e_m);
    exponent_sum += pair_integral(cfg.lambda_m, ratio, cfg.alpha_L,
                                  LinkState::LoS, /*blockage=*/false, lower,
                                  cfg, spec);
  }
  return std::exp(-kTwoPi * exponent_sum);
}

}  // namespace iabnet
