// SINR coverage probabilities for access (user->SBS, user->MBS) and
// backhaul (SBS->MBS) links, conditional on serving distance and marginal.
#pragma once

#include "geometry.hpp"
#include "model.hpp"
#include "quadrature.hpp"

namespace iabnet {

struct CoverageResult {
  double los = 0.0;
  double nlos = 0.0;
  double total() const { return los + nlos; }
};

enum class CoverageMode {
  General,       // noise + full interference Laplace transform
  NoiseOnly,     // interference dropped (Laplace factor = 1)
  InterferenceLimited,  // LoS-only high-density transform, no noise term
};

// P[SINR > gamma | serving (tier, state) at distance r]:
// exp(-gamma N0 / (P^tr B A_sigma r^{-alpha_sigma})) * Laplace(gamma
// r^{alpha_sigma}).  With the interferer field emptied the Laplace factor is
// exactly 1.0, so the noise-only expression is reproduced bitwise.
double conditional_coverage(const TierLink& link, double gamma, double r,
                            const NetworkConfig& cfg,
                            CoverageMode mode = CoverageMode::General,
                            const QuadSpec& spec = {});

// Marginal coverage: integral of conditional coverage against the
// association density of each link state.
CoverageResult coverage(Tier tier, double gamma, const NetworkConfig& cfg,
                        CoverageMode mode = CoverageMode::General,
                        const QuadSpec& spec = {});

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace iabnet
