// Laplace transforms of cumulative interference for every serving
// configuration (user served by SBS/MBS in LoS/NLoS, plus the SBS->MBS
// backhaul), and the high-density LoS-only approximation.
#pragma once

#include "geometry.hpp"
#include "model.hpp"
#include "quadrature.hpp"

namespace iabnet {

struct LaplaceQuery {
  TierLink serving;   // serving tier and link state
  double s_argument;  // transform argument, gamma * r^alpha_sigma
  double r;           // serving distance, m
};

// E[exp(-s I)] for the cumulative interference seen by the given serving
// link.  One parameterized template covers all serving configurations: the
// interferer set is every (tier, state) pair visible to the receiver, each
// integrated from its association-exclusion distance outward.
double laplace_interference(const LaplaceQuery& q, const NetworkConfig& cfg,
                            const QuadSpec& spec = {});

// High-density approximation: all interferers treated as LoS with the LoS
// exponent and no blockage thinning; the MBS-tier lower limit uses the raw
// power ratio (P_m/P_s)^{1/alpha_L} * r.  Serving link is the LoS SBS
// access configuration.
double laplace_interference_limited(double s_argument, double r,
                                    const NetworkConfig& cfg,
                                    const QuadSpec& spec = {});

}  // namespace iabnet
