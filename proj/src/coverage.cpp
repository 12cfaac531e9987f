#include "coverage.hpp"

#include <cmath>
#include <stdexcept>

#include "interference.hpp"

namespace iabnet {

double conditional_coverage(const TierLink& link, double gamma, double r,
                            const NetworkConfig& cfg, CoverageMode mode,
                            const QuadSpec& spec) {
  if (!(r > 0))
    throw std::domain_error("conditional_coverage: r must be > 0");
  if (!(gamma >= 0))
    throw std::domain_error("conditional_coverage: gamma must be >= 0");
  if (gamma == 0.0) return 1.0;

  const double e_k = biased_power(link.tier, cfg);
  if (e_k == 0.0) return 0.0;  // no signal power: never covered
  const double a_sigma = link.state == LinkState::LoS ? cfg.A_L : cfg.A_NL;
  const double alpha_sigma =
      link.state == LinkState::LoS ? cfg.alpha_L : cfg.alpha_NL;
  const double signal = e_k * a_sigma * std::pow(r, -alpha_sigma);
  const double s_argument = gamma * std::pow(r, alpha_sigma);

  switch (mode) {
    case CoverageMode::NoiseOnly:
      return std::exp(-gamma * cfg.N0 / signal);
    case CoverageMode::InterferenceLimited:
      // High-density regime: noise dropped from the access factor.
      return laplace_interference_limited(s_argument, r, cfg, spec);
    case CoverageMode::General:
      break;
  }
  const double noise_factor = std::exp(-gamma * cfg.N0 / signal);
  if (noise_factor == 0.0) return 0.0;
  return noise_factor *
         laplace_interference({link, s_argument, r}, cfg, spec);
}

CoverageResult coverage(Tier tier, double gamma, const NetworkConfig& cfg,
                        CoverageMode mode, const QuadSpec& spec) {
  if (!(gamma >= 0))
    throw std::domain_error("coverage: gamma must be >= 0");
  CoverageResult out;
  const double lambda = tier_density(tier, cfg);
  if (lambda <= 0.0) return out;

  // Inner (Laplace) integrals run one decade tighter than the outer one.
  QuadSpec inner = spec;
  inner.rel_tol = spec.rel_tol * 0.1;

  const double split = truncation_radius(lambda, spec.tail_mass_threshold);
  for (LinkState state : {LinkState::LoS, LinkState::NLoS}) {
    const TierLink link{tier, state};
    auto integrand = [&](double r) {
      const double density = association_density(link, r, cfg);
      if (density == 0.0) return 0.0;
      return conditional_coverage(link, gamma, r, cfg, mode, inner) *
             density;
    };
    const auto res = integrate_semi_infinite(integrand, 0.0, spec, split);
    (state == LinkState::LoS ? out.los : out.nlos) = res.value;
  }
  return out;
}

}  // namespace iabnet
