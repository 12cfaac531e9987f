#include "montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

namespace iabnet {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr double kZ95 = 1.959963984540054;  // two-sided 95% normal quantile

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-based stream: each drop owns an RNG derived from (seed, index)
// alone, so drops are order-independent and parallel-safe.
std::mt19937_64 drop_rng(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t x = seed ^ (0x9E3779B97F4A7C15ULL * (index + 1));
  const std::uint64_t a = splitmix64(x);
  const std::uint64_t b = splitmix64(x);
  return std::mt19937_64(a ^ (b << 1));
}

struct Station {
  double r;          // distance to the window centre
  LinkState state;   // blockage state of the link to the centre
  double rx;         // biased received power with fading
};

// Samples one tier's PPP in the disk and materializes the links to the
// typical receiver at the centre.
void sample_tier(double lambda, double e_biased, double radius,
                 const NetworkConfig& cfg, std::mt19937_64& rng,
                 std::vector<Station>& out) {
  out.clear();
  if (lambda <= 0.0 || radius <= 0.0) return;
  std::poisson_distribution<long long> count(lambda * kPi * radius * radius);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::exponential_distribution<double> fading(1.0);
  const long long n = count(rng);
  out.reserve(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    const double r = radius * std::sqrt(uni(rng));
    if (r <= 0.0) continue;
    const LinkState state = uni(rng) < los_probability(r, cfg.beta)
                                ? LinkState::LoS
                                : LinkState::NLoS;
    const double rx = e_biased * fading(rng) * path_loss(r, state, cfg);
    out.push_back({r, state, rx});
  }
}

struct WorkerScratch {
  std::vector<Station> sbs, mbs;
};

DropOutcome run_one_drop(std::uint64_t seed, std::uint64_t index,
                         const NetworkConfig& cfg, double radius, double eta,
                         double p_h, WorkerScratch& scratch) {
  std::mt19937_64 rng = drop_rng(seed, index);
  const double e_s = biased_power(Tier::SBS, cfg);
  const double e_m = biased_power(Tier::MBS, cfg);
  sample_tier(cfg.lambda_s, e_s, radius, cfg, rng, scratch.sbs);
  sample_tier(cfg.lambda_m, e_m, radius, cfg, rng, scratch.mbs);

  DropOutcome out;
  double best_rx = 0.0, total_rx = 0.0;
  const Station* best = nullptr;
  std::uint8_t best_tier = 0;
  for (const Station& s : scratch.sbs) {
    total_rx += s.rx;
    if (s.rx > best_rx) {
      best_rx = s.rx;
      best = &s;
      best_tier = 1;
    }
  }
  for (const Station& s : scratch.mbs) {
    total_rx += s.rx;
    if (s.rx > best_rx) {
      best_rx = s.rx;
      best = &s;
      best_tier = 2;
    }
  }
  if (best != nullptr) {
    out.assoc = best_tier;
    out.acc_state = best->state == LinkState::LoS ? 0 : 1;
    out.serving_distance = static_cast<float>(best->r);
    out.sinr_acc = best_rx / (total_rx - best_rx + cfg.N0);
  }

  // Backhaul link of the typical SBS (co-located with the window centre):
  // same MBS realization, fresh blockage states and fading for the new
  // receiver.
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::exponential_distribution<double> fading(1.0);
  double bh_best = 0.0, bh_total = 0.0;
  LinkState bh_state = LinkState::NLoS;
  for (const Station& s : scratch.mbs) {
    const LinkState state = uni(rng) < los_probability(s.r, cfg.beta)
                                ? LinkState::LoS
                                : LinkState::NLoS;
    const double rx = e_m * fading(rng) * path_loss(s.r, state, cfg);
    bh_total += rx;
    if (rx > bh_best) {
      bh_best = rx;
      bh_state = state;
    }
  }
  if (bh_best > 0.0) {
    out.bh_present = 1;
    out.bh_state = bh_state == LinkState::LoS ? 0 : 1;
    out.sinr_bh = bh_best / (bh_total - bh_best + cfg.N0);
  }

  out.cache_hit = uni(rng) < p_h ? 1 : 0;

  // Delivered spectral efficiency, min-of-links convention: every SBS user
  // shares the backhaul scaled by the long-run miss fraction.
  if (out.assoc == 1 && eta > 0.0) {
    const double se_acc = eta * std::log2(1.0 + out.sinr_acc);
    if (p_h >= 1.0) {
      out.delivered_se = se_acc;
    } else if (eta < 1.0 && out.bh_present) {
      const double se_bh =
          (1.0 - eta) / (1.0 - p_h) * std::log2(1.0 + out.sinr_bh);
      out.delivered_se = std::min(se_acc, se_bh);
    } else {
      out.delivered_se = 0.0;  // no backhaul capacity available
    }
  } else if (out.assoc == 2 && eta > 0.0) {
    out.delivered_se = eta * std::log2(1.0 + out.sinr_acc);
  }
  return out;
}

Estimate binomial_estimate(long long hits, long long n) {
  if (n <= 0) return {};
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return {p, kZ95 * std::sqrt(std::max(0.0, p * (1.0 - p)) /
                              static_cast<double>(n))};
}

Estimate mean_estimate(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n == 0) return {};
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(n);
  if (n == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return {mean, kZ95 * sd / std::sqrt(static_cast<double>(n))};
}

void validate_spec(const SimSpec& spec, const NetworkConfig& cfg,
                   double& radius) {
  const std::string err = validate(cfg);
  if (!err.empty()) throw std::invalid_argument("simulation: " + err);
  if (spec.drops < 1)
    throw std::invalid_argument("simulation: drops must be >= 1");
  const double bound = min_window_radius(cfg);
  radius = spec.window_radius > 0.0 ? spec.window_radius : bound;
  if (radius < bound)
    throw std::invalid_argument(
        "simulation: window_radius below the edge-effect bound " +
        std::to_string(bound));
}

template <typename Fn>
void parallel_for(long long n, int jobs, Fn&& fn) {
  const int workers = static_cast<int>(
      std::max<long long>(1, std::min<long long>(jobs > 0 ? jobs : 1, n)));
  if (workers == 1) {
    WorkerScratch scratch;
    for (long long i = 0; i < n; ++i) fn(i, scratch);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([=, &fn]() {
      WorkerScratch scratch;
      for (long long i = w; i < n; i += workers) fn(i, scratch);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace

double min_window_radius(const NetworkConfig& cfg) {
  double lambda_min = std::numeric_limits<double>::infinity();
  if (cfg.lambda_s > 0.0) lambda_min = std::min(lambda_min, cfg.lambda_s);
  if (cfg.lambda_m > 0.0) lambda_min = std::min(lambda_min, cfg.lambda_m);
  if (!std::isfinite(lambda_min)) return 1.0;  // empty network: any window
  return 5.0 / std::sqrt(kPi * lambda_min);
}

SimReport run_drops(const SimSpec& spec, const NetworkConfig& cfg) {
  double radius = 0.0;
  validate_spec(spec, cfg, radius);
  if (!(spec.point.eta >= 0.0 && spec.point.eta <= 1.0))
    throw std::invalid_argument("simulation: eta must lie in [0, 1]");
  if (spec.point.C < 0 || spec.point.C > cfg.F)
    throw std::invalid_argument("simulation: C out of [0, F]");

  NetworkConfig c = cfg;
  c.C = spec.point.C;
  const double p_h = cache_hit_ratio(c);
  const long long n = spec.drops;
  std::vector<DropOutcome> records(static_cast<std::size_t>(n));
  parallel_for(n, spec.jobs, [&](long long i, WorkerScratch& scratch) {
    records[static_cast<std::size_t>(i)] = run_one_drop(
        spec.seed, static_cast<std::uint64_t>(i), c, radius, spec.point.eta,
        p_h, scratch);
  });

  SimReport rep;
  rep.drops = n;
  rep.window_radius = radius;
  rep.gammas = spec.gammas;
  const std::size_t ng = spec.gammas.size();
  rep.cov_sbs_los.resize(ng);
  rep.cov_sbs_nlos.resize(ng);
  rep.cov_mbs_los.resize(ng);
  rep.cov_mbs_nlos.resize(ng);
  rep.cov_bh_los.resize(ng);
  rep.cov_bh_nlos.resize(ng);

  long long a_sl = 0, a_snl = 0, a_ml = 0, a_mnl = 0, a_none = 0, bh_l = 0,
            bh_n = 0;
  std::vector<long long> c_sl(ng, 0), c_snl(ng, 0), c_ml(ng, 0), c_mnl(ng, 0),
      c_bl(ng, 0), c_bnl(ng, 0);
  std::vector<double> se(static_cast<std::size_t>(n));
  long long acc_hit_l = 0, acc_hit_nl = 0, bh_hit_l = 0, bh_hit_nl = 0;
  for (long long i = 0; i < n; ++i) {
    const DropOutcome& d = records[static_cast<std::size_t>(i)];
    const bool los = d.acc_state == 0;
    if (d.assoc == 0) {
      ++a_none;
    } else if (d.assoc == 1) {
      (los ? a_sl : a_snl)++;
    } else {
      (los ? a_ml : a_mnl)++;
    }
    if (d.bh_present) (d.bh_state == 0 ? bh_l : bh_n)++;
    for (std::size_t g = 0; g < ng; ++g) {
      const bool cov = d.sinr_acc > spec.gammas[g];
      if (d.assoc == 1 && cov) (los ? c_sl[g] : c_snl[g])++;
      if (d.assoc == 2 && cov) (los ? c_ml[g] : c_mnl[g])++;
      if (d.bh_present && d.sinr_bh > spec.gammas[g])
        (d.bh_state == 0 ? c_bl[g] : c_bnl[g])++;
    }
    if (d.assoc == 1 && d.sinr_acc > spec.gamma0)
      (los ? acc_hit_l : acc_hit_nl)++;
    if (d.bh_present && d.sinr_bh > spec.gamma0)
      (d.bh_state == 0 ? bh_hit_l : bh_hit_nl)++;
    se[static_cast<std::size_t>(i)] = d.delivered_se;
  }

  rep.assoc_sbs_los = binomial_estimate(a_sl, n);
  rep.assoc_sbs_nlos = binomial_estimate(a_snl, n);
  rep.assoc_mbs_los = binomial_estimate(a_ml, n);
  rep.assoc_mbs_nlos = binomial_estimate(a_mnl, n);
  rep.assoc_none = binomial_estimate(a_none, n);
  rep.bh_los = binomial_estimate(bh_l, n);
  for (std::size_t g = 0; g < ng; ++g) {
    rep.cov_sbs_los[g] = binomial_estimate(c_sl[g], n);
    rep.cov_sbs_nlos[g] = binomial_estimate(c_snl[g], n);
    rep.cov_mbs_los[g] = binomial_estimate(c_ml[g], n);
    rep.cov_mbs_nlos[g] = binomial_estimate(c_mnl[g], n);
    rep.cov_bh_los[g] = binomial_estimate(c_bl[g], n);
    rep.cov_bh_nlos[g] = binomial_estimate(c_bnl[g], n);
  }

  // APT: plug the empirical coverage probabilities into the min-of-links
  // throughput cases.  Half-widths propagate first-order through the active
  // branch of each min.
  {
    const double eta = spec.point.eta;
    const double seff = std::log2(1.0 + spec.gamma0);
    auto mc = [&](long long hits) { return binomial_estimate(hits, n); };
    const Estimate pa_l = mc(acc_hit_l), pa_nl = mc(acc_hit_nl);
    const Estimate pb_l = mc(bh_hit_l), pb_nl = mc(bh_hit_nl);
    if (spec.point.C >= max_cache_capacity(c)) {
      rep.apt = {0.0, 0.0};
    } else {
      const double as = c.lambda_s * eta * c.W * seff;
      const double am = c.lambda_m * eta * c.W * seff;
      const double cs = p_h >= 1.0
                            ? std::numeric_limits<double>::infinity()
                            : c.lambda_m * (1.0 - eta) * c.W * seff /
                                  (1.0 - p_h);
      double total = 0.0, hw = 0.0;
      const Estimate acc[2] = {pa_l, pa_nl};
      const Estimate bh[2] = {pb_l, pb_nl};
      for (const Estimate& a : acc) {
        for (const Estimate& b : bh) {
          const double access = as * a.mean;
          const double cap = p_h >= 1.0
                                 ? std::numeric_limits<double>::infinity()
                                 : cs * b.mean;
          if (access <= cap) {
            total += access;
            hw += as * a.half_width;
          } else {
            total += cap;
            hw += cs * b.half_width;
          }
        }
      }
      // MBS tier: access states only (gamma0 coverage via the gamma grid is
      // not needed; reuse the same counters computed above).
      long long m_hit_l = 0, m_hit_nl = 0;
      for (long long i = 0; i < n; ++i) {
        const DropOutcome& d = records[static_cast<std::size_t>(i)];
        if (d.assoc == 2 && d.sinr_acc > spec.gamma0)
          (d.acc_state == 0 ? m_hit_l : m_hit_nl)++;
      }
      const Estimate pm_l = mc(m_hit_l), pm_nl = mc(m_hit_nl);
      total += am * (pm_l.mean + pm_nl.mean);
      hw += am * (pm_l.half_width + pm_nl.half_width);
      rep.apt = {total, hw};
    }
  }

  Estimate se_est = mean_estimate(se);
  rep.ase = {c.lambda_u * se_est.mean, c.lambda_u * se_est.half_width};
  return rep;
}

namespace {

// Total interference at a receiver whose serving link is (serving, r):
// each competing tier's PPP thinned by the per-state exclusion radius.
double thinned_interference(const TierLink& serving, double r, double radius,
                            const NetworkConfig& cfg, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::exponential_distribution<double> fading(1.0);
  double total = 0.0;
  const bool backhaul = serving.tier == Tier::Backhaul;
  const Tier tiers[2] = {Tier::SBS, Tier::MBS};
  for (const Tier tier : tiers) {
    if (backhaul && tier == Tier::SBS) continue;
    const double lambda = tier == Tier::SBS ? cfg.lambda_s : cfg.lambda_m;
    const double e_j = biased_power(tier, cfg);
    if (lambda <= 0.0 || e_j <= 0.0) continue;
    std::poisson_distribution<long long> count(lambda * kPi * radius *
                                               radius);
    const long long m = count(rng);
    for (long long i = 0; i < m; ++i) {
      const double u = radius * std::sqrt(uni(rng));
      if (u <= 0.0) continue;
      const LinkState state = uni(rng) < los_probability(u, cfg.beta)
                                  ? LinkState::LoS
                                  : LinkState::NLoS;
      if (u < exclusion_distance(serving, tier, state, r, cfg)) continue;
      total += e_j * fading(rng) * path_loss(u, state, cfg);
    }
  }
  return total;
}

Estimate reduce_exp_estimator(const SimSpec& spec, const NetworkConfig& cfg,
                              const TierLink& serving, double r,
                              double scale) {
  double radius = 0.0;
  validate_spec(spec, cfg, radius);
  if (!(r > 0.0))
    throw std::invalid_argument("simulation: serving distance must be > 0");
  const long long n = spec.drops;
  std::vector<double> vals(static_cast<std::size_t>(n));
  parallel_for(n, spec.jobs, [&](long long i, WorkerScratch&) {
    std::mt19937_64 rng = drop_rng(spec.seed, static_cast<std::uint64_t>(i));
    const double interference =
        thinned_interference(serving, r, radius, cfg, rng);
    vals[static_cast<std::size_t>(i)] = std::exp(-scale * interference);
  });
  return mean_estimate(vals);
}

}  // namespace

Estimate empirical_laplace(const TierLink& serving, double s, double r,
                           const SimSpec& spec, const NetworkConfig& cfg) {
  if (!(s >= 0.0))
    throw std::invalid_argument("simulation: s must be >= 0");
  if (s == 0.0) return {1.0, 0.0};
  return reduce_exp_estimator(spec, cfg, serving, r, s);
}

Estimate mc_conditional_coverage(const TierLink& serving, double gamma,
                                 double r, const SimSpec& spec,
                                 const NetworkConfig& cfg) {
  if (!(gamma >= 0.0))
    throw std::invalid_argument("simulation: gamma must be >= 0");
  if (gamma == 0.0) return {1.0, 0.0};
  const double e_k = biased_power(serving.tier, cfg);
  const double signal = e_k * path_loss(r, serving.state, cfg);
  if (signal <= 0.0) return {0.0, 0.0};
  // Rayleigh fading on the serving link integrates out in closed form:
  // P[h > gamma (I + N0) / S] = E[exp(-gamma (I + N0) / S)].
  const double scale = gamma / signal;
  Estimate e = reduce_exp_estimator(spec, cfg, serving, r, scale);
  const double noise_factor = std::exp(-scale * cfg.N0);
  return {noise_factor * e.mean, noise_factor * e.half_width};
}

}  // namespace iabnet
