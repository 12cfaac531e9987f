// Distance distributions to the nearest base station per link state and
// biased-association probability densities for user->SBS, user->MBS, and
// SBS->MBS backhaul links.
#pragma once

#include <array>
#include <optional>
#include <string>

#include "model.hpp"
#include "quadrature.hpp"

namespace iabnet {

enum class Tier { SBS, MBS, Backhaul };

struct TierLink {
  Tier tier;
  LinkState state;
};

// The 14 exclusion events: names read <serving state><interferer state>_
// <serving tier><interferer tier>, with "bh" for the backhaul (MBS-only)
// cases.  Example: ln_sm = serving LoS SBS, excluding NLoS MBS interferers.
enum class ExclusionKind {
  ln_ss, ll_sm, ln_sm,  // user served by LoS SBS
  nl_ss, nl_sm, nn_sm,  // user served by NLoS SBS
  ln_mm, ll_ms, ln_ms,  // user served by LoS MBS
  nl_mm, nl_ms, nn_ms,  // user served by NLoS MBS
  ln_bh, nl_bh,         // typical SBS served by LoS / NLoS MBS
};

struct ExclusionSpec {
  ExclusionKind kind;
  const char* name;
  TierLink serving;
  Tier interferer_tier;
  LinkState interferer_state;
};

// Table of all 14 exclusion events (the algebra lives in one template;
// this table enumerates which (serving, interferer) pair each name binds).
const std::array<ExclusionSpec, 14>& exclusion_table();

std::optional<ExclusionKind> parse_exclusion_kind(const std::string& name);
const char* exclusion_kind_name(ExclusionKind kind);

// Biased transmit power P^tr * B for a tier (Backhaul = the MBS tier).
double biased_power(Tier tier, const NetworkConfig& cfg);

// Density of the tier used by a serving link (Backhaul = lambda_m).
double tier_density(Tier tier, const NetworkConfig& cfg);

// Distance beyond which an interferer of (tier j, state tau) cannot beat a
// serving link of (tier k, state sigma) at distance r in biased received
// power (fading evaluated at its mean): continuous, non-decreasing in r.
double exclusion_distance(const TierLink& serving, Tier interferer_tier,
                          LinkState interferer_state, double r,
                          const NetworkConfig& cfg);

// exp(-lambda_j * pi * d(r)^2) for one named exclusion event.
double exclusion_probability(ExclusionKind kind, double r,
                             const NetworkConfig& cfg);

// PDF of the distance to the nearest tier-k BS seen through state sigma:
// P_sigma(r) * exp(-pi r^2 lambda_k) * 2 pi r lambda_k.
double nearest_distance_pdf(const TierLink& link, double r,
                            const NetworkConfig& cfg);

// Association probability density: product of the exclusion probabilities
// for every competing (tier, state) pair times the nearest-distance pdf.
double association_density(const TierLink& target, double r,
                           const NetworkConfig& cfg);

// Integrated association mass of one (tier, state) target.  The product
// construction does not guarantee the six masses sum to 1; callers get the
// value as-is (no renormalization).
double association_mass(const TierLink& target, const NetworkConfig& cfg,
                        const QuadSpec& spec = {});

// Radius beyond which the nearest-BS void probability exp(-pi lambda r^2)
// falls below mass_threshold; used to place quadrature split points.
double truncation_radius(double lambda, double mass_threshold);

}  // namespace iabnet
