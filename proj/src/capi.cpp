#include "iabnet/iabnet.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "config_io.hpp"
#include "coverage.hpp"
#include "geometry.hpp"
#include "metrics.hpp"
#include "model.hpp"
#include "montecarlo.hpp"
#include "quadrature.hpp"

using namespace iabnet;

struct iabnet_config {
  NetworkConfig cfg;
};

struct iabnet_engine {
  explicit iabnet_engine(const NetworkConfig& c) : eng(c) {}
  Engine eng;
};

namespace {

thread_local std::string g_last_error;

iabnet_status fail(iabnet_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs `fn` and maps exceptions onto the status codes.
template <typename Fn>
iabnet_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const NumericError& e) {
    return fail(IABNET_NUMERIC, e.what());
  } catch (const std::exception& e) {
    return fail(IABNET_USAGE, e.what());
  } catch (...) {
    return fail(IABNET_USAGE, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

iabnet_status require(bool ok, const char* message) {
  return ok ? IABNET_OK : fail(IABNET_USAGE, message);
}

Tier to_tier(int tier) {
  switch (tier) {
    case IABNET_TIER_SBS: return Tier::SBS;
    case IABNET_TIER_MBS: return Tier::MBS;
    case IABNET_TIER_BACKHAUL: return Tier::Backhaul;
    default: throw std::invalid_argument("tier must be 0 (sbs), 1 (mbs), or 2 (backhaul)");
  }
}

CoverageMode to_mode(int mode) {
  switch (mode) {
    case IABNET_MODE_GENERAL: return CoverageMode::General;
    case IABNET_MODE_NOISE_ONLY: return CoverageMode::NoiseOnly;
    case IABNET_MODE_INTF_LIMITED: return CoverageMode::InterferenceLimited;
    default: throw std::invalid_argument("mode must be 0 (general), 1 (noise-only), or 2 (interference-limited)");
  }
}

AseVariant to_variant(int variant) {
  switch (variant) {
    case IABNET_MODE_GENERAL: return AseVariant::General;
    case IABNET_MODE_NOISE_ONLY: return AseVariant::NoiseLimited;
    case IABNET_MODE_INTF_LIMITED: return AseVariant::InterferenceLimited;
    default: throw std::invalid_argument("variant must be 0 (general), 1 (noise-only), or 2 (interference-limited)");
  }
}

LinkState to_state(int state) {
  if (state == 0) return LinkState::LoS;
  if (state == 1) return LinkState::NLoS;
  throw std::invalid_argument("state must be 0 (LoS) or 1 (NLoS)");
}

int resolve_cache(const NetworkConfig& cfg, int cache_files) {
  return cache_files < 0 ? cfg.C : cache_files;
}

std::string describe(const std::vector<ConfigError>& errors) {
  std::string out;
  for (const ConfigError& e : errors) {
    if (!out.empty()) out += "; ";
    if (!e.key.empty()) out += e.key + ": ";
    out += e.message;
  }
  return out.empty() ? "configuration error" : out;
}

SimSpec to_sim_spec(const iabnet_sim_params& p, const double* gammas_db,
                    size_t n_gammas) {
  SimSpec spec;
  spec.window_radius = p.window_radius;
  spec.drops = p.drops;
  spec.seed = p.seed;
  spec.jobs = p.jobs;
  spec.point = {p.eta, p.cache_files};
  spec.gamma0 = db_to_linear(p.gamma0_db);
  spec.gammas.reserve(n_gammas);
  for (size_t i = 0; i < n_gammas; ++i)
    spec.gammas.push_back(db_to_linear(gammas_db[i]));
  return spec;
}

void append_row(std::string& csv, const char* quantity, const char* gamma,
                const char* fmt, double value, double ci) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, value);
  csv += quantity;
  csv += ',';
  csv += gamma;
  csv += ',';
  csv += buf;
  std::snprintf(buf, sizeof buf, fmt, ci);
  csv += ',';
  csv += buf;
  csv += '\n';
}

std::string format_db(double gamma_db) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", gamma_db);
  return buf;
}

}  // namespace

extern "C" {

const char* iabnet_version(void) { return "1.0.0"; }

const char* iabnet_last_error(void) { return g_last_error.c_str(); }

void iabnet_free_string(char* s) { std::free(s); }

iabnet_config* iabnet_config_create(void) {
  return new (std::nothrow) iabnet_config{};
}

iabnet_config* iabnet_config_clone(const iabnet_config* cfg) {
  if (cfg == nullptr) return nullptr;
  return new (std::nothrow) iabnet_config{cfg->cfg};
}

void iabnet_config_destroy(iabnet_config* cfg) { delete cfg; }

iabnet_status iabnet_config_load_file(iabnet_config* cfg, const char* path) {
  if (iabnet_status s = require(cfg && path, "null argument"); s != IABNET_OK)
    return s;
  return guarded([&] {
    std::vector<ConfigError> errors;
    NetworkConfig next = cfg->cfg;
    if (!load_config_file(path, next, errors))
      return fail(IABNET_USAGE, describe(errors));
    cfg->cfg = next;
    return IABNET_OK;
  });
}

iabnet_status iabnet_config_apply_env(iabnet_config* cfg) {
  if (iabnet_status s = require(cfg != nullptr, "null config"); s != IABNET_OK)
    return s;
  return guarded([&] {
    std::vector<ConfigError> errors;
    NetworkConfig next = cfg->cfg;
    if (!apply_env_overrides(next, errors))
      return fail(IABNET_USAGE, describe(errors));
    cfg->cfg = next;
    return IABNET_OK;
  });
}

iabnet_status iabnet_config_set(iabnet_config* cfg, const char* key,
                                const char* value) {
  if (iabnet_status s = require(cfg && key && value, "null argument");
      s != IABNET_OK)
    return s;
  return guarded([&] {
    std::string error;
    if (!set_config_value(cfg->cfg, key, value, error))
      return fail(IABNET_USAGE, error);
    return IABNET_OK;
  });
}

iabnet_status iabnet_config_get(const iabnet_config* cfg, const char* key,
                                char* buf, size_t buflen) {
  if (iabnet_status s = require(cfg && key && buf, "null argument");
      s != IABNET_OK)
    return s;
  return guarded([&] {
    const std::string value = get_config_value(cfg->cfg, key);
    if (value.empty()) return fail(IABNET_USAGE, std::string("unknown key: ") + key);
    if (value.size() + 1 > buflen)
      return fail(IABNET_USAGE, "buffer too small");
    std::memcpy(buf, value.c_str(), value.size() + 1);
    return IABNET_OK;
  });
}

iabnet_status iabnet_config_validate(const iabnet_config* cfg) {
  if (iabnet_status s = require(cfg != nullptr, "null config"); s != IABNET_OK)
    return s;
  return guarded([&] {
    const std::string error = validate(cfg->cfg);
    if (!error.empty()) return fail(IABNET_USAGE, error);
    return IABNET_OK;
  });
}

iabnet_status iabnet_config_serialize(const iabnet_config* cfg, char** out) {
  if (iabnet_status s = require(cfg && out, "null argument"); s != IABNET_OK)
    return s;
  return guarded([&] {
    *out = dup_string(serialize_config(cfg->cfg));
    return require(*out != nullptr, "allocation failed");
  });
}

uint64_t iabnet_config_fingerprint(const iabnet_config* cfg) {
  if (cfg == nullptr) return 0;
  return config_fingerprint(cfg->cfg);
}

iabnet_status iabnet_cache_hit_ratio(const iabnet_config* cfg, int C,
                                     double* out) {
  if (iabnet_status s = require(cfg && out, "null argument"); s != IABNET_OK)
    return s;
  return guarded([&] {
    *out = cache_hit_ratio(C, cfg->cfg.F, cfg->cfg.gamma_p);
    return IABNET_OK;
  });
}

iabnet_status iabnet_max_cache_capacity(const iabnet_config* cfg, int* out) {
  if (iabnet_status s = require(cfg && out, "null argument"); s != IABNET_OK)
    return s;
  return guarded([&] {
    *out = max_cache_capacity(cfg->cfg);
    return IABNET_OK;
  });
}

iabnet_status iabnet_association_mass(const iabnet_config* cfg, int tier,
                                      int state, double* out) {
  if (iabnet_status s = require(cfg && out, "null argument"); s != IABNET_OK)
    return s;
  return guarded([&] {
    *out = association_mass({to_tier(tier), to_state(state)}, cfg->cfg);
    return IABNET_OK;
  });
}

iabnet_engine* iabnet_engine_create(const iabnet_config* cfg) {
  if (cfg == nullptr) {
    g_last_error = "null config";
    return nullptr;
  }
  try {
    return new iabnet_engine(cfg->cfg);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return nullptr;
  }
}

void iabnet_engine_destroy(iabnet_engine* eng) { delete eng; }

iabnet_status iabnet_coverage(iabnet_engine* eng, int tier, double gamma_db,
                              int mode, int cache_files, double out[3]) {
  if (iabnet_status s = require(eng && out, "null argument"); s != IABNET_OK)
    return s;
  return guarded([&] {
    NetworkConfig c = eng->eng.config();
    c.C = resolve_cache(c, cache_files);
    const CoverageResult r =
        coverage(to_tier(tier), db_to_linear(gamma_db), c, to_mode(mode),
                 EngineOptions{}.coverage_spec);
    out[0] = r.los;
    out[1] = r.nlos;
    out[2] = r.total();
    return IABNET_OK;
  });
}

iabnet_status iabnet_conditional_coverage(iabnet_engine* eng, int tier,
                                          int state, double gamma_db,
                                          double r, int mode, double* out) {
  if (iabnet_status s = require(eng && out, "null argument"); s != IABNET_OK)
    return s;
  return guarded([&] {
    *out = conditional_coverage({to_tier(tier), to_state(state)},
                                db_to_linear(gamma_db), r, eng->eng.config(),
                                to_mode(mode), EngineOptions{}.coverage_spec);
    return IABNET_OK;
  });
}

iabnet_status iabnet_apt(iabnet_engine* eng, double eta, int cache_files,
                         double gamma0_db, double out[7]) {
  if (iabnet_status s = require(eng && out, "null argument"); s != IABNET_OK)
    return s;
  return guarded([&] {
    const int C = resolve_cache(eng->eng.config(), cache_files);
    const AptResult r = eng->eng.apt({eta, C}, db_to_linear(gamma0_db));
    out[0] = r.sbs_ll;
    out[1] = r.sbs_ln;
    out[2] = r.sbs_nl;
    out[3] = r.sbs_nn;
    out[4] = r.mbs_l;
    out[5] = r.mbs_nl;
    out[6] = r.total;
    return IABNET_OK;
  });
}

iabnet_status iabnet_ase(iabnet_engine* eng, double eta, int cache_files,
                         int variant, double out[3]) {
  if (iabnet_status s = require(eng && out, "null argument"); s != IABNET_OK)
    return s;
  return guarded([&] {
    const int C = resolve_cache(eng->eng.config(), cache_files);
    const AseResult r = eng->eng.ase({eta, C}, to_variant(variant));
    out[0] = r.sbs;
    out[1] = r.mbs;
    out[2] = r.total;
    return IABNET_OK;
  });
}

iabnet_status iabnet_optimal_partition(iabnet_engine* eng, int cache_files,
                                       int objective, double gamma0_db,
                                       int variant, double* out) {
  if (iabnet_status s = require(eng && out, "null argument"); s != IABNET_OK)
    return s;
  return guarded([&] {
    const int C = resolve_cache(eng->eng.config(), cache_files);
    Objective obj;
    if (objective == IABNET_OBJECTIVE_APT)
      obj = Objective::Apt;
    else if (objective == IABNET_OBJECTIVE_ASE)
      obj = Objective::Ase;
    else
      throw std::invalid_argument("objective must be 0 (apt) or 1 (ase)");
    *out = eng->eng.optimal_partition(C, obj, db_to_linear(gamma0_db),
                                      to_variant(variant));
    return IABNET_OK;
  });
}

iabnet_status iabnet_saved_spectrum(iabnet_engine* eng, int cache_files,
                                    double* out) {
  if (iabnet_status s = require(eng && out, "null argument"); s != IABNET_OK)
    return s;
  return guarded([&] {
    const int C = resolve_cache(eng->eng.config(), cache_files);
    *out = eng->eng.saved_spectrum(C);
    return IABNET_OK;
  });
}

iabnet_status iabnet_rate_ccdf_sbs(const iabnet_config* cfg, double rho,
                                   double r_s, double r_bh, double eta,
                                   int cache_files, double out4[4]) {
  if (iabnet_status s = require(cfg && out4, "null argument"); s != IABNET_OK)
    return s;
  return guarded([&] {
    const int C = resolve_cache(cfg->cfg, cache_files);
    const SbsRateCcdf r = rate_ccdf_sbs(rho, r_s, r_bh, {eta, C}, cfg->cfg);
    out4[0] = r.ll;
    out4[1] = r.ln;
    out4[2] = r.nl;
    out4[3] = r.nn;
    return IABNET_OK;
  });
}

iabnet_status iabnet_rate_ccdf_mbs(const iabnet_config* cfg, double rho,
                                   double r_m, double eta, int cache_files,
                                   double out2[2]) {
  if (iabnet_status s = require(cfg && out2, "null argument"); s != IABNET_OK)
    return s;
  return guarded([&] {
    const int C = resolve_cache(cfg->cfg, cache_files);
    const MbsRateCcdf r = rate_ccdf_mbs(rho, r_m, {eta, C}, cfg->cfg);
    out2[0] = r.l;
    out2[1] = r.nl;
    return IABNET_OK;
  });
}

void iabnet_sim_params_init(iabnet_sim_params* params) {
  if (params == nullptr) return;
  params->window_radius = 0.0;
  params->drops = 10000;
  params->seed = 1;
  params->jobs = 1;
  params->eta = 0.5;
  params->cache_files = 100;
  params->gamma0_db = 10.0;
}

iabnet_status iabnet_simulate_csv(const iabnet_config* cfg,
                                  const iabnet_sim_params* params,
                                  const double* gammas_db, size_t n_gammas,
                                  char** csv_out) {
  if (iabnet_status s = require(cfg && params && csv_out, "null argument");
      s != IABNET_OK)
    return s;
  if (iabnet_status s = require(gammas_db != nullptr || n_gammas == 0,
                                "null gamma list");
      s != IABNET_OK)
    return s;
  return guarded([&] {
    const SimSpec spec = to_sim_spec(*params, gammas_db, n_gammas);
    const SimReport rep = run_drops(spec, cfg->cfg);

    std::string csv = "quantity,gamma_db,value,ci_half_width\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%lld", rep.drops);
    csv += std::string("drops,,") + buf + ",0\n";
    append_row(csv, "window_radius_m", "", "%.6f", rep.window_radius, 0.0);
    append_row(csv, "assoc_sbs_los", "", "%.6f", rep.assoc_sbs_los.mean,
               rep.assoc_sbs_los.half_width);
    append_row(csv, "assoc_sbs_nlos", "", "%.6f", rep.assoc_sbs_nlos.mean,
               rep.assoc_sbs_nlos.half_width);
    append_row(csv, "assoc_mbs_los", "", "%.6f", rep.assoc_mbs_los.mean,
               rep.assoc_mbs_los.half_width);
    append_row(csv, "assoc_mbs_nlos", "", "%.6f", rep.assoc_mbs_nlos.mean,
               rep.assoc_mbs_nlos.half_width);
    append_row(csv, "assoc_none", "", "%.6f", rep.assoc_none.mean,
               rep.assoc_none.half_width);
    append_row(csv, "assoc_bh_los", "", "%.6f", rep.bh_los.mean,
               rep.bh_los.half_width);
    for (size_t g = 0; g < rep.gammas.size(); ++g) {
      const std::string db = format_db(gammas_db[g]);
      append_row(csv, "cov_sbs_los", db.c_str(), "%.6f",
                 rep.cov_sbs_los[g].mean, rep.cov_sbs_los[g].half_width);
      append_row(csv, "cov_sbs_nlos", db.c_str(), "%.6f",
                 rep.cov_sbs_nlos[g].mean, rep.cov_sbs_nlos[g].half_width);
      append_row(csv, "cov_mbs_los", db.c_str(), "%.6f",
                 rep.cov_mbs_los[g].mean, rep.cov_mbs_los[g].half_width);
      append_row(csv, "cov_mbs_nlos", db.c_str(), "%.6f",
                 rep.cov_mbs_nlos[g].mean, rep.cov_mbs_nlos[g].half_width);
      append_row(csv, "cov_bh_los", db.c_str(), "%.6f",
                 rep.cov_bh_los[g].mean, rep.cov_bh_los[g].half_width);
      append_row(csv, "cov_bh_nlos", db.c_str(), "%.6f",
                 rep.cov_bh_nlos[g].mean, rep.cov_bh_nlos[g].half_width);
    }
    append_row(csv, "apt", "", "%.5e", rep.apt.mean, rep.apt.half_width);
    append_row(csv, "ase", "", "%.5e", rep.ase.mean, rep.ase.half_width);
    *csv_out = dup_string(csv);
    return require(*csv_out != nullptr, "allocation failed");
  });
}

iabnet_status iabnet_compare_csv(iabnet_engine* eng,
                                 const iabnet_sim_params* params,
                                 const double* gammas_db, size_t n_gammas,
                                 double tol_prob, double tol_rel,
                                 char** csv_out) {
  if (iabnet_status s = require(eng && params && csv_out, "null argument");
      s != IABNET_OK)
    return s;
  if (iabnet_status s = require(gammas_db != nullptr || n_gammas == 0,
                                "null gamma list");
      s != IABNET_OK)
    return s;
  return guarded([&] {
    if (!(tol_prob >= 0.0) || !(tol_rel >= 0.0))
      throw std::invalid_argument("tolerances must be >= 0");
    const SimSpec spec = to_sim_spec(*params, gammas_db, n_gammas);
    NetworkConfig c = eng->eng.config();
    c.C = params->cache_files;
    const SimReport rep = run_drops(spec, c);
    const QuadSpec qspec = EngineOptions{}.coverage_spec;

    std::string csv =
        "quantity,gamma_db,analytic,simulated,ci_half_width,abs_gap,allowed,"
        "flag\n";
    int flagged = 0;
    auto push = [&](const char* quantity, const std::string& db,
                    double analytic, const Estimate& sim, bool rate_row) {
      const double gap = std::fabs(analytic - sim.mean);
      const double allowed =
          std::max(rate_row ? tol_rel * std::fabs(analytic) : tol_prob,
                   3.0 * sim.half_width);
      const bool flag = gap > allowed;
      flagged += flag ? 1 : 0;
      const char* fmt = rate_row ? "%.5e" : "%.6f";
      char buf[160];
      csv += quantity;
      csv += ',';
      csv += db;
      for (double v : {analytic, sim.mean, sim.half_width, gap, allowed}) {
        std::snprintf(buf, sizeof buf, fmt, v);
        csv += ',';
        csv += buf;
      }
      csv += flag ? ",1\n" : ",0\n";
    };

    // Association masses: the analytic product construction is an
    // approximation, so its gap to the empirical fractions is reported on
    // the same footing as everything else.
    const double m_sl = association_mass({Tier::SBS, LinkState::LoS}, c);
    const double m_snl = association_mass({Tier::SBS, LinkState::NLoS}, c);
    const double m_ml = association_mass({Tier::MBS, LinkState::LoS}, c);
    const double m_mnl = association_mass({Tier::MBS, LinkState::NLoS}, c);
    const double m_bhl = association_mass({Tier::Backhaul, LinkState::LoS}, c);
    push("assoc_sbs_los", "", m_sl, rep.assoc_sbs_los, false);
    push("assoc_sbs_nlos", "", m_snl, rep.assoc_sbs_nlos, false);
    push("assoc_mbs_los", "", m_ml, rep.assoc_mbs_los, false);
    push("assoc_mbs_nlos", "", m_mnl, rep.assoc_mbs_nlos, false);
    push("assoc_none", "", 1.0 - m_sl - m_snl - m_ml - m_mnl, rep.assoc_none,
         false);
    push("assoc_bh_los", "", m_bhl, rep.bh_los, false);

    for (size_t g = 0; g < rep.gammas.size(); ++g) {
      const std::string db = format_db(gammas_db[g]);
      const double gamma = rep.gammas[g];
      const CoverageResult s =
          coverage(Tier::SBS, gamma, c, CoverageMode::General, qspec);
      const CoverageResult m =
          coverage(Tier::MBS, gamma, c, CoverageMode::General, qspec);
      const CoverageResult bh =
          coverage(Tier::Backhaul, gamma, c, CoverageMode::General, qspec);
      push("cov_sbs_los", db, s.los, rep.cov_sbs_los[g], false);
      push("cov_sbs_nlos", db, s.nlos, rep.cov_sbs_nlos[g], false);
      push("cov_mbs_los", db, m.los, rep.cov_mbs_los[g], false);
      push("cov_mbs_nlos", db, m.nlos, rep.cov_mbs_nlos[g], false);
      push("cov_bh_los", db, bh.los, rep.cov_bh_los[g], false);
      push("cov_bh_nlos", db, bh.nlos, rep.cov_bh_nlos[g], false);
    }

    const PartitionPoint point{params->eta, params->cache_files};
    const AptResult apt = eng->eng.apt(point, db_to_linear(params->gamma0_db));
    const AseResult ase = eng->eng.ase(point);
    push("apt", "", apt.total, rep.apt, true);
    push("ase", "", ase.total, rep.ase, true);

    *csv_out = dup_string(csv);
    if (*csv_out == nullptr) return fail(IABNET_USAGE, "allocation failed");
    if (flagged > 0)
      return fail(IABNET_TOLERANCE,
                  std::to_string(flagged) + " comparison row(s) exceeded the tolerance");
    return IABNET_OK;
  });
}

}  // extern "C"
