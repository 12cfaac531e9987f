#include "geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace iabnet {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double intercept(LinkState s, const NetworkConfig& cfg) {
  return s == LinkState::LoS ? cfg.A_L : cfg.A_NL;
}
double exponent(LinkState s, const NetworkConfig& cfg) {
  return s == LinkState::LoS ? cfg.alpha_L : cfg.alpha_NL;
}
double state_probability(LinkState s, double r, const NetworkConfig& cfg) {
  return s == LinkState::LoS ? los_probability(r, cfg.beta)
                             : nlos_probability(r, cfg.beta);
}

}  // namespace

const std::array<ExclusionSpec, 14>& exclusion_table() {
  using K = ExclusionKind;
  using L = LinkState;
  static const std::array<ExclusionSpec, 14> table = {{
      {K::ln_ss, "ln_ss", {Tier::SBS, L::LoS}, Tier::SBS, L::NLoS},
      {K::ll_sm, "ll_sm", {Tier::SBS, L::LoS}, Tier::MBS, L::LoS},
      {K::ln_sm, "ln_sm", {Tier::SBS, L::LoS}, Tier::MBS, L::NLoS},
      {K::nl_ss, "nl_ss", {Tier::SBS, L::NLoS}, Tier::SBS, L::LoS},
      {K::nl_sm, "nl_sm", {Tier::SBS, L::NLoS}, Tier::MBS, L::LoS},
      {K::nn_sm, "nn_sm", {Tier::SBS, L::NLoS}, Tier::MBS, L::NLoS},
      {K::ln_mm, "ln_mm", {Tier::MBS, L::LoS}, Tier::MBS, L::NLoS},
      {K::ll_ms, "ll_ms", {Tier::MBS, L::LoS}, Tier::SBS, L::LoS},
      {K::ln_ms, "ln_ms", {Tier::MBS, L::LoS}, Tier::SBS, L::NLoS},
      {K::nl_mm, "nl_mm", {Tier::MBS, L::NLoS}, Tier::MBS, L::LoS},
      {K::nl_ms, "nl_ms", {Tier::MBS, L::NLoS}, Tier::SBS, L::LoS},
      {K::nn_ms, "nn_ms", {Tier::MBS, L::NLoS}, Tier::SBS, L::NLoS},
      {K::ln_bh, "ln_bh", {Tier::Backhaul, L::LoS}, Tier::MBS, L::NLoS},
      {K::nl_bh, "nl_bh", {Tier::Backhaul, L::NLoS}, Tier::MBS, L::LoS},
  }};
  return table;
}

std::optional<ExclusionKind> parse_exclusion_kind(const std::string& name) {
  for (const auto& e : exclusion_table())
    if (name == e.name) return e.kind;
  return std::nullopt;
}

const char* exclusion_kind_name(ExclusionKind kind) {
  for (const auto& e : exclusion_table())
    if (e.kind == kind) return e.name;
  return "?";
}

double biased_power(Tier tier, const NetworkConfig& cfg) {
  switch (tier) {
    case Tier::SBS:
      return sbs_transmit_power(cfg) * cfg.B_s;
    case Tier::MBS:
    case Tier::Backhaul:
      return mbs_transmit_power(cfg) * cfg.B_m;
  }
  return 0.0;
}

double tier_density(Tier tier, const NetworkConfig& cfg) {
  switch (tier) {
    case Tier::SBS:
      return cfg.lambda_s;
    case Tier::MBS:
    case Tier::Backhaul:
      return cfg.lambda_m;
  }
  return 0.0;
}

double exclusion_distance(const TierLink& serving, Tier interferer_tier,
                          LinkState interferer_state, double r,
                          const NetworkConfig& cfg) {
  if (!(r > 0)) throw std::domain_error("exclusion_distance: r must be > 0");
  const double e_k = biased_power(serving.tier, cfg);
  const double e_j = biased_power(interferer_tier, cfg);
  if (e_j == 0.0) return 0.0;  // a silent tier can never win the association
  if (e_k == 0.0) return std::numeric_limits<double>::infinity();
  const double a_sigma = intercept(serving.state, cfg);
  const double alpha_sigma = exponent(serving.state, cfg);
  const double a_tau = intercept(interferer_state, cfg);
  const double alpha_tau = exponent(interferer_state, cfg);
  // Solve E_j A_tau d^{-alpha_tau} = E_k A_sigma r^{-alpha_sigma} for d.
  const double coeff =
      std::pow((e_j * a_tau) / (e_k * a_sigma), 1.0 / alpha_tau);
  return coeff * std::pow(r, alpha_sigma / alpha_tau);
}

double exclusion_probability(ExclusionKind kind, double r,
                             const NetworkConfig& cfg) {
  for (const auto& e : exclusion_table()) {
    if (e.kind != kind) continue;
    const double d =
        exclusion_distance(e.serving, e.interferer_tier, e.interferer_state,
                           r, cfg);
    const double lambda = tier_density(e.interferer_tier, cfg);
    if (std::isinf(d)) return lambda > 0 ? 0.0 : 1.0;
    return std::exp(-lambda * kPi * d * d);
  }
  throw std::invalid_argument("exclusion_probability: unknown kind");
}

double nearest_distance_pdf(const TierLink& link, double r,
                            const NetworkConfig& cfg) {
  if (!(r > 0))
    throw std::domain_error("nearest_distance_pdf: r must be > 0");
  const double lambda = tier_density(link.tier, cfg);
  return state_probability(link.state, r, cfg) *
         std::exp(-kPi * r * r * lambda) * 2.0 * kPi * r * lambda;
}

double association_density(const TierLink& target, double r,
                           const NetworkConfig& cfg) {
  if (!(r > 0))
    throw std::domain_error("association_density: r must be > 0");
  double product = nearest_distance_pdf(target, r, cfg);
  if (product == 0.0) return 0.0;
  // Serving links with zero biased power cannot carry an association.
  if (biased_power(target.tier, cfg) == 0.0) return 0.0;
  for (const auto& e : exclusion_table()) {
    if (e.serving.tier != target.tier || e.serving.state != target.state)
      continue;
    product *= exclusion_probability(e.kind, r, cfg);
  }
  return product;
}

double association_mass(const TierLink& target, const NetworkConfig& cfg,
                        const QuadSpec& spec) {
  const double lambda = tier_density(target.tier, cfg);
  if (lambda <= 0 || biased_power(target.tier, cfg) == 0.0) return 0.0;
  const double split = truncation_radius(lambda, spec.tail_mass_threshold);
  const auto res = integrate_semi_infinite(
      [&](double r) { return association_density(target, r, cfg); }, 0.0,
      spec, split);
  return res.value;
}

double truncation_radius(double lambda, double mass_threshold) {
  if (lambda <= 0 || mass_threshold <= 0 || mass_threshold >= 1)
    return 0.0;  // caller falls back to the integrator's default split
  return std::sqrt(std::log(1.0 / mass_threshold) / (kPi * lambda));
}

}  // namespace iabnet
