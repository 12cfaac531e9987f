#include "metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace iabnet {

namespace {

constexpr double kLn2 = 0.6931471805599453094172321214581766;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Spectral-efficiency threshold 2^{rho/share} - 1 as a linear SINR value.
double se_threshold(double rho, double share) {
  if (rho <= 0.0) return 0.0;
  if (share <= 0.0) return kInf;
  return std::expm1(rho * kLn2 / share);
}

long long gamma_key(double gamma0) {
  long long k;
  static_assert(sizeof k == sizeof gamma0);
  std::memcpy(&k, &gamma0, sizeof k);
  return k;
}

double golden_refine(const std::function<double(double)>& f, double a,
                     double b, double tol) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 >= f2) {  // ties move the bracket toward smaller eta
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

// Integral of a decaying spectral-efficiency CCDF over rho (or t).
double integrate_ccdf(const std::function<double(double)>& g,
                      double rel_tol) {
  const double g0 = g(0.0);
  if (!(g0 > 0.0)) return 0.0;
  double end = 1e-6;
  while (g(end) > 1e-10 * g0 && end < 1e9) end *= 2.0;
  QuadSpec spec;
  spec.rel_tol = rel_tol;
  spec.abs_tol = 1e-12 * g0 * end;
  return integrate(g, 0.0, end, spec).value;
}

}  // namespace

SbsRateCcdf rate_ccdf_sbs(double rho, double r_s, double r_bh,
                          const PartitionPoint& p, const NetworkConfig& cfg,
                          const QuadSpec& spec) {
  if (!(rho >= 0))
    throw std::domain_error("rate_ccdf_sbs: rho must be >= 0");
  if (rho == 0.0) return {1.0, 1.0, 1.0, 1.0};
  const double p_h = cache_hit_ratio(p.C, cfg.F, cfg.gamma_p);
  const double tau_a = se_threshold(rho, p.eta);
  const double tau_b =
      p_h >= 1.0 ? 0.0 : se_threshold(rho * (1.0 - p_h), 1.0 - p.eta);
  auto access = [&](LinkState s) {
    if (std::isinf(tau_a)) return 0.0;
    return conditional_coverage({Tier::SBS, s}, tau_a, r_s, cfg,
                                CoverageMode::General, spec);
  };
  auto backhaul = [&](LinkState s) {
    if (std::isinf(tau_b)) return 0.0;
    return conditional_coverage({Tier::Backhaul, s}, tau_b, r_bh, cfg,
                                CoverageMode::General, spec);
  };
  const double a_l = access(LinkState::LoS), a_n = access(LinkState::NLoS);
  const double b_l = backhaul(LinkState::LoS),
               b_n = backhaul(LinkState::NLoS);
  return {a_l * b_l, a_l * b_n, a_n * b_l, a_n * b_n};
}

MbsRateCcdf rate_ccdf_mbs(double rho, double r_m, const PartitionPoint& p,
                          const NetworkConfig& cfg, const QuadSpec& spec) {
  if (!(rho >= 0))
    throw std::domain_error("rate_ccdf_mbs: rho must be >= 0");
  if (rho == 0.0) return {1.0, 1.0};
  const double tau = se_threshold(rho, p.eta);
  if (std::isinf(tau)) return {0.0, 0.0};
  return {conditional_coverage({Tier::MBS, LinkState::LoS}, tau, r_m, cfg,
                               CoverageMode::General, spec),
          conditional_coverage({Tier::MBS, LinkState::NLoS}, tau, r_m, cfg,
                               CoverageMode::General, spec)};
}

Engine::Engine(const NetworkConfig& cfg, EngineOptions opt)
    : cfg_(cfg), opt_(opt) {
  const std::string err = validate(cfg_);
  if (!err.empty()) throw std::invalid_argument("Engine: " + err);
}

CoverageResult Engine::coverage_of(Tier tier, double gamma,
                                   CoverageMode mode) const {
  return coverage(tier, gamma, cfg_, mode, opt_.coverage_spec);
}

std::shared_ptr<const SinrCurves> Engine::curves(int C, CoverageMode mode) {
  const std::pair<int, int> key{C, static_cast<int>(mode)};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = curves_.find(key);
    if (it != curves_.end()) return it->second;
  }

  NetworkConfig c = cfg_;
  c.C = C;
  auto out = std::make_shared<SinrCurves>();
  auto component = [&](Tier tier, LinkState state) {
    const TierLink link{tier, state};
    return build_curve(
        [&, link](double gamma) {
          QuadSpec inner = opt_.coverage_spec;
          inner.rel_tol *= 0.1;
          const double lambda = tier_density(link.tier, c);
          if (lambda <= 0.0) return 0.0;
          const double split =
              truncation_radius(lambda, opt_.coverage_spec.tail_mass_threshold);
          return integrate_semi_infinite(
                     [&](double r) {
                       const double density = association_density(link, r, c);
                       if (density == 0.0) return 0.0;
                       return conditional_coverage(link, gamma, r, c, mode,
                                                   inner) *
                              density;
                     },
                     0.0, opt_.coverage_spec, split)
              .value;
        },
        opt_.curve_options);
  };

  if (mode == CoverageMode::InterferenceLimited) {
    // Only the LoS access curve exists in this regime; the backhaul and MBS
    // parts of the interference-limited ASE reuse the general curves.
    out->s_l = component(Tier::SBS, LinkState::LoS);
  } else {
    out->s_l = component(Tier::SBS, LinkState::LoS);
    out->s_nl = component(Tier::SBS, LinkState::NLoS);
    out->m_l = component(Tier::MBS, LinkState::LoS);
    out->m_nl = component(Tier::MBS, LinkState::NLoS);
    out->bh_l = component(Tier::Backhaul, LinkState::LoS);
    out->bh_nl = component(Tier::Backhaul, LinkState::NLoS);
    out->km = integrate_ccdf(
        [&](double t) {
          const double tau = std::expm1(t * kLn2);
          return out->m_l.eval(tau) + out->m_nl.eval(tau);
        },
        opt_.rho_rel_tol);
  }

  std::lock_guard<std::mutex> lock(mu_);
  auto [it, unused] = curves_.emplace(key, std::move(out));
  return it->second;
}

AseResult Engine::ase_from_curves(const SinrCurves& base,
                                  const SinrCurves* intf_access, double eta,
                                  int C, AseVariant variant) const {
  AseResult out;
  if (eta <= 0.0) return out;
  const double p_h = cache_hit_ratio(C, cfg_.F, cfg_.gamma_p);

  auto access_total = [&](double tau) {
    if (variant == AseVariant::InterferenceLimited)
      return intf_access->s_l.eval(tau);
    return base.s_l.eval(tau) + base.s_nl.eval(tau);
  };
  auto backhaul_total = [&](double tau) {
    return base.bh_l.eval(tau) + base.bh_nl.eval(tau);
  };

  auto g = [&](double rho) {
    const double acc = access_total(se_threshold(rho, eta));
    if (acc == 0.0) return 0.0;
    if (p_h >= 1.0) return acc;  // fully cached: no backhaul constraint
    const double tau_b = se_threshold(rho * (1.0 - p_h), 1.0 - eta);
    if (std::isinf(tau_b)) return 0.0;
    return acc * backhaul_total(tau_b);
  };
  out.sbs = cfg_.lambda_u * integrate_ccdf(g, opt_.rho_rel_tol);
  out.mbs = cfg_.lambda_u * eta * (base.km > 0.0 ? base.km : 0.0);
  out.total = out.sbs + out.mbs;
  return out;
}

AseResult Engine::ase(const PartitionPoint& p, AseVariant variant) {
  if (!(p.eta >= 0.0 && p.eta <= 1.0))
    throw std::domain_error("ase: eta must lie in [0, 1]");
  if (p.C < 0 || p.C > cfg_.F)
    throw std::domain_error("ase: C out of [0, F]");
  const CoverageMode base_mode = variant == AseVariant::NoiseLimited
                                     ? CoverageMode::NoiseOnly
                                     : CoverageMode::General;
  auto base = curves(p.C, base_mode);
  std::shared_ptr<const SinrCurves> intf;
  if (variant == AseVariant::InterferenceLimited)
    intf = curves(p.C, CoverageMode::InterferenceLimited);
  return ase_from_curves(*base, intf.get(), p.eta, p.C, variant);
}

Engine::AptCoverage Engine::apt_coverage(int C, double gamma0) {
  const std::pair<int, long long> key{C, gamma_key(gamma0)};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = apt_cov_.find(key);
    if (it != apt_cov_.end()) return it->second;
  }
  NetworkConfig c = cfg_;
  c.C = C;
  const CoverageResult s =
      coverage(Tier::SBS, gamma0, c, CoverageMode::General,
               opt_.coverage_spec);
  const CoverageResult m =
      coverage(Tier::MBS, gamma0, c, CoverageMode::General,
               opt_.coverage_spec);
  const CoverageResult bh =
      coverage(Tier::Backhaul, gamma0, c, CoverageMode::General,
               opt_.coverage_spec);
  const AptCoverage out{s.los, s.nlos, m.los, m.nlos, bh.los, bh.nlos};
  std::lock_guard<std::mutex> lock(mu_);
  apt_cov_.emplace(key, out);
  return out;
}

AptResult Engine::apt_from_coverage(const AptCoverage& cov, double eta,
                                    int C, double gamma0) const {
  AptResult out;
  // Past the cache power budget the SBS tier cannot transmit: the whole
  // partition point is reported as zero throughput.
  if (C >= max_cache_capacity(cfg_)) return out;
  const double p_h = cache_hit_ratio(C, cfg_.F, cfg_.gamma_p);
  const double se = std::log2(1.0 + gamma0);
  const double access_l = cfg_.lambda_s * eta * cfg_.W * se * cov.s_l;
  const double access_nl = cfg_.lambda_s * eta * cfg_.W * se * cov.s_nl;
  const double cap_scale =
      p_h >= 1.0 ? kInf : cfg_.lambda_m * (1.0 - eta) * cfg_.W * se /
                              (1.0 - p_h);
  const double cap_l = p_h >= 1.0 ? kInf : cap_scale * cov.bh_l;
  const double cap_nl = p_h >= 1.0 ? kInf : cap_scale * cov.bh_nl;
  out.sbs_ll = std::min(access_l, cap_l);
  out.sbs_ln = std::min(access_l, cap_nl);
  out.sbs_nl = std::min(access_nl, cap_l);
  out.sbs_nn = std::min(access_nl, cap_nl);
  out.mbs_l = cfg_.lambda_m * eta * cfg_.W * se * cov.m_l;
  out.mbs_nl = cfg_.lambda_m * eta * cfg_.W * se * cov.m_nl;
  out.total = out.sbs_ll + out.sbs_ln + out.sbs_nl + out.sbs_nn + out.mbs_l +
              out.mbs_nl;
  return out;
}

AptResult Engine::apt(const PartitionPoint& p, double gamma0) {
  if (!(p.eta >= 0.0 && p.eta <= 1.0))
    throw std::domain_error("apt: eta must lie in [0, 1]");
  if (p.C < 0 || p.C > cfg_.F)
    throw std::domain_error("apt: C out of [0, F]");
  if (!(gamma0 >= 0)) throw std::domain_error("apt: gamma0 must be >= 0");
  if (p.C >= max_cache_capacity(cfg_)) return {};
  return apt_from_coverage(apt_coverage(p.C, gamma0), p.eta, p.C, gamma0);
}

double Engine::optimal_partition(int C, Objective objective, double gamma0,
                                 AseVariant variant) {
  std::function<double(double)> value;
  std::shared_ptr<const SinrCurves> base, intf;
  AptCoverage cov{};
  if (objective == Objective::Apt) {
    if (C < max_cache_capacity(cfg_)) cov = apt_coverage(C, gamma0);
    value = [&](double eta) {
      return apt_from_coverage(cov, eta, C, gamma0).total;
    };
  } else {
    const CoverageMode base_mode = variant == AseVariant::NoiseLimited
                                       ? CoverageMode::NoiseOnly
                                       : CoverageMode::General;
    base = curves(C, base_mode);
    if (variant == AseVariant::InterferenceLimited)
      intf = curves(C, CoverageMode::InterferenceLimited);
    value = [&, this](double eta) {
      return ase_from_curves(*base, intf.get(), eta, C, variant).total;
    };
  }

  const int n = 100;
  int best = 0;
  double best_val = value(0.0);
  for (int i = 1; i <= n; ++i) {
    const double v = value(static_cast<double>(i) / n);
    if (v > best_val) {  // strict: ties stay at the smaller eta
      best = i;
      best_val = v;
    }
  }
  const double lo = std::max(0.0, (best - 1) / static_cast<double>(n));
  const double hi = std::min(1.0, (best + 1) / static_cast<double>(n));
  const double refined = golden_refine(value, lo, hi, 1e-3);
  return value(refined) > best_val ? refined
                                   : static_cast<double>(best) / n;
}

double Engine::saved_spectrum(int C) {
  return optimal_partition(C, Objective::Ase) -
         optimal_partition(0, Objective::Ase);
}

}  // namespace iabnet
