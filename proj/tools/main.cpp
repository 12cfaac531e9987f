// Command-line front end. Links only the public C API.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "iabnet/iabnet.h"

namespace {

struct ConfigGuard {
  iabnet_config* cfg = nullptr;
  ~ConfigGuard() { iabnet_config_destroy(cfg); }
};

struct EngineGuard {
  iabnet_engine* eng = nullptr;
  ~EngineGuard() { iabnet_engine_destroy(eng); }
};

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> sets;
  bool no_env = false;
  std::string output;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path,
                  "Config file (key=value lines, dotted sections, e.g. "
                  "power.P_s_tot=9.1)");
  cmd->add_option("--set", opts.sets,
                  "Override one config key, e.g. --set cache.C=100 "
                  "(repeatable, applied after file and environment)");
  cmd->add_flag("--no-env", opts.no_env,
                "Ignore IABNET_-prefixed environment overrides");
  cmd->add_option("-o,--output", opts.output,
                  "Write CSV to this file instead of stdout");
}

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return 2;
}

int status_error(iabnet_status status) {
  std::cerr << "error: " << iabnet_last_error() << "\n";
  return static_cast<int>(status);
}

// Builds the effective config: defaults -> file -> environment -> --set.
int build_config(const CommonOpts& opts, ConfigGuard& guard) {
  guard.cfg = iabnet_config_create();
  if (guard.cfg == nullptr) return usage_error("out of memory");
  if (!opts.config_path.empty()) {
    if (iabnet_config_load_file(guard.cfg, opts.config_path.c_str()) !=
        IABNET_OK)
      return usage_error(iabnet_last_error());
  }
  if (!opts.no_env) {
    if (iabnet_config_apply_env(guard.cfg) != IABNET_OK)
      return usage_error(iabnet_last_error());
  }
  for (const std::string& kv : opts.sets) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos)
      return usage_error("--set expects key=value, got: " + kv);
    if (iabnet_config_set(guard.cfg, kv.substr(0, eq).c_str(),
                          kv.substr(eq + 1).c_str()) != IABNET_OK)
      return usage_error(iabnet_last_error());
  }
  if (iabnet_config_validate(guard.cfg) != IABNET_OK)
    return usage_error(iabnet_last_error());
  return 0;
}

int emit(const CommonOpts& opts, const std::string& text) {
  if (opts.output.empty()) {
    std::cout << text;
    return std::cout ? 0 : usage_error("failed to write to stdout");
  }
  std::ofstream out(opts.output, std::ios::binary);
  if (!out) return usage_error("cannot open output file: " + opts.output);
  out << text;
  return out ? 0 : usage_error("failed to write: " + opts.output);
}

bool parse_tier(const std::string& name, int& tier) {
  if (name == "sbs") tier = IABNET_TIER_SBS;
  else if (name == "mbs") tier = IABNET_TIER_MBS;
  else if (name == "backhaul" || name == "bh") tier = IABNET_TIER_BACKHAUL;
  else return false;
  return true;
}

bool parse_mode(const std::string& name, int& mode) {
  if (name == "general") mode = IABNET_MODE_GENERAL;
  else if (name == "noise") mode = IABNET_MODE_NOISE_ONLY;
  else if (name == "interference" || name == "intf")
    mode = IABNET_MODE_INTF_LIMITED;
  else return false;
  return true;
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

const char* kTierName[3] = {"sbs", "mbs", "backhaul"};
const char* kStateName[2] = {"los", "nlos"};

int run_coverage(const CommonOpts& opts, const std::vector<double>& gammas_db,
                 const std::vector<std::string>& tiers,
                 const std::string& mode_name, int cache_files) {
  int mode = 0;
  if (!parse_mode(mode_name, mode))
    return usage_error("unknown mode: " + mode_name);
  std::vector<int> tier_ids;
  for (const std::string& t : tiers) {
    int id = 0;
    if (!parse_tier(t, id)) return usage_error("unknown tier: " + t);
    tier_ids.push_back(id);
  }
  ConfigGuard cfg;
  if (int rc = build_config(opts, cfg); rc != 0) return rc;
  EngineGuard eng{iabnet_engine_create(cfg.cfg)};
  if (eng.eng == nullptr) return usage_error(iabnet_last_error());

  std::string csv = "tier,state,gamma_db,probability\n";
  for (const int tier : tier_ids) {
    for (const double db : gammas_db) {
      double out[3] = {0, 0, 0};
      const iabnet_status s =
          iabnet_coverage(eng.eng, tier, db, mode, cache_files, out);
      if (s != IABNET_OK) return status_error(s);
      for (int state = 0; state < 2; ++state) {
        csv += kTierName[tier];
        csv += ',';
        csv += kStateName[state];
        csv += ',' + fmt("%.6f", db) + ',' + fmt("%.6f", out[state]) + '\n';
      }
      csv += kTierName[tier];
      csv += ",total," + fmt("%.6f", db) + ',' + fmt("%.6f", out[2]) + '\n';
    }
  }
  return emit(opts, csv);
}

int run_apt(const CommonOpts& opts, double eta, int cache_files,
            double gamma0_db) {
  ConfigGuard cfg;
  if (int rc = build_config(opts, cfg); rc != 0) return rc;
  EngineGuard eng{iabnet_engine_create(cfg.cfg)};
  if (eng.eng == nullptr) return usage_error(iabnet_last_error());
  double out[7];
  const iabnet_status s =
      iabnet_apt(eng.eng, eta, cache_files, gamma0_db, out);
  if (s != IABNET_OK) return status_error(s);
  static const char* kRow[7] = {"sbs_ll", "sbs_ln",  "sbs_nl", "sbs_nn",
                                "mbs_los", "mbs_nlos", "total"};
  std::string csv = "quantity,bps_per_m2\n";
  for (int i = 0; i < 7; ++i)
    csv += std::string(kRow[i]) + ',' + fmt("%.5e", out[i]) + '\n';
  return emit(opts, csv);
}

int run_ase(const CommonOpts& opts, double eta, int cache_files,
            const std::string& variant_name) {
  int variant = 0;
  if (!parse_mode(variant_name, variant))
    return usage_error("unknown variant: " + variant_name);
  ConfigGuard cfg;
  if (int rc = build_config(opts, cfg); rc != 0) return rc;
  EngineGuard eng{iabnet_engine_create(cfg.cfg)};
  if (eng.eng == nullptr) return usage_error(iabnet_last_error());
  double out[3];
  const iabnet_status s = iabnet_ase(eng.eng, eta, cache_files, variant, out);
  if (s != IABNET_OK) return status_error(s);
  std::string csv = "quantity,bps_per_hz_per_m2\n";
  csv += "sbs," + fmt("%.5e", out[0]) + '\n';
  csv += "mbs," + fmt("%.5e", out[1]) + '\n';
  csv += "total," + fmt("%.5e", out[2]) + '\n';
  return emit(opts, csv);
}

int run_sweep(const CommonOpts& opts, double eta_start, double eta_stop,
              double eta_step, std::vector<int> caches,
              const std::string& objective_name, double gamma0_db) {
  if (eta_step <= 0.0) return usage_error("--eta-step must be > 0");
  if (eta_stop < eta_start)
    return usage_error("--eta-stop must be >= --eta-start");
  int objective;
  if (objective_name == "apt") objective = IABNET_OBJECTIVE_APT;
  else if (objective_name == "ase") objective = IABNET_OBJECTIVE_ASE;
  else return usage_error("unknown objective: " + objective_name);
  if (caches.empty()) caches.push_back(0);

  ConfigGuard cfg;
  if (int rc = build_config(opts, cfg); rc != 0) return rc;
  EngineGuard eng{iabnet_engine_create(cfg.cfg)};
  if (eng.eng == nullptr) return usage_error(iabnet_last_error());

  char fp[32];
  std::snprintf(fp, sizeof fp, "%016llx",
                static_cast<unsigned long long>(
                    iabnet_config_fingerprint(cfg.cfg)));

  std::vector<double> etas;
  for (double eta = eta_start; eta <= eta_stop + 1e-12; eta += eta_step)
    etas.push_back(eta);

  std::string csv =
      "fingerprint,version,C,eta,apt_bps_per_m2,ase_bps_per_hz_per_m2,"
      "ase_noise,ase_intf,cov_sbs_los,cov_sbs_nlos,cov_mbs_los,cov_mbs_nlos,"
      "cov_bh_los,cov_bh_nlos\n";
  for (const int C : caches) {
    double cov[3][3];
    for (int tier = 0; tier < 3; ++tier) {
      const iabnet_status s = iabnet_coverage(
          eng.eng, tier, gamma0_db, IABNET_MODE_GENERAL, C, cov[tier]);
      if (s != IABNET_OK) return status_error(s);
    }
    for (const double eta : etas) {
      double apt[7], ase[3], ase_noise[3], ase_intf[3];
      iabnet_status s = iabnet_apt(eng.eng, eta, C, gamma0_db, apt);
      if (s == IABNET_OK)
        s = iabnet_ase(eng.eng, eta, C, IABNET_MODE_GENERAL, ase);
      if (s == IABNET_OK)
        s = iabnet_ase(eng.eng, eta, C, IABNET_MODE_NOISE_ONLY, ase_noise);
      if (s == IABNET_OK)
        s = iabnet_ase(eng.eng, eta, C, IABNET_MODE_INTF_LIMITED, ase_intf);
      if (s != IABNET_OK) return status_error(s);
      csv += std::string(fp) + ',' + iabnet_version() + ',' +
             std::to_string(C) + ',' + fmt("%.6f", eta) + ',' +
             fmt("%.5e", apt[6]) + ',' + fmt("%.5e", ase[2]) + ',' +
             fmt("%.5e", ase_noise[2]) + ',' + fmt("%.5e", ase_intf[2]);
      for (int tier = 0; tier < 3; ++tier)
        for (int state = 0; state < 2; ++state)
          csv += ',' + fmt("%.6f", cov[tier][state]);
      csv += '\n';
    }
  }

  // Per-C optimum summary under the selected objective.
  csv += "summary_C,eta_star,delta_eta\n";
  double eta0 = 0.0;
  {
    const iabnet_status s = iabnet_optimal_partition(
        eng.eng, 0, objective, gamma0_db, IABNET_MODE_GENERAL, &eta0);
    if (s != IABNET_OK) return status_error(s);
  }
  for (const int C : caches) {
    double eta_star = 0.0;
    const iabnet_status s = iabnet_optimal_partition(
        eng.eng, C, objective, gamma0_db, IABNET_MODE_GENERAL, &eta_star);
    if (s != IABNET_OK) return status_error(s);
    csv += std::to_string(C) + ',' + fmt("%.6f", eta_star) + ',' +
           fmt("%.6f", eta_star - eta0) + '\n';
  }
  return emit(opts, csv);
}

int run_simulate(const CommonOpts& opts, const iabnet_sim_params& params,
                 const std::vector<double>& gammas_db) {
  ConfigGuard cfg;
  if (int rc = build_config(opts, cfg); rc != 0) return rc;
  char* csv = nullptr;
  const iabnet_status s = iabnet_simulate_csv(
      cfg.cfg, &params, gammas_db.empty() ? nullptr : gammas_db.data(),
      gammas_db.size(), &csv);
  if (s != IABNET_OK) return status_error(s);
  std::unique_ptr<char, decltype(&iabnet_free_string)> hold(
      csv, &iabnet_free_string);
  return emit(opts, csv);
}

int run_compare(const CommonOpts& opts, const iabnet_sim_params& params,
                const std::vector<double>& gammas_db, double tol_prob,
                double tol_rel) {
  ConfigGuard cfg;
  if (int rc = build_config(opts, cfg); rc != 0) return rc;
  EngineGuard eng{iabnet_engine_create(cfg.cfg)};
  if (eng.eng == nullptr) return usage_error(iabnet_last_error());
  char* csv = nullptr;
  const iabnet_status s = iabnet_compare_csv(
      eng.eng, &params, gammas_db.empty() ? nullptr : gammas_db.data(),
      gammas_db.size(), tol_prob, tol_rel, &csv);
  if (s != IABNET_OK && s != IABNET_TOLERANCE) return status_error(s);
  std::unique_ptr<char, decltype(&iabnet_free_string)> hold(
      csv, &iabnet_free_string);
  if (int rc = emit(opts, csv); rc != 0) return rc;
  if (s == IABNET_TOLERANCE) {
    std::cerr << "tolerance: " << iabnet_last_error() << "\n";
    return 1;
  }
  return 0;
}

void add_sim_options(CLI::App* cmd, iabnet_sim_params& params,
                     std::vector<double>& gammas_db) {
  cmd->add_option("--drops", params.drops, "Number of simulation drops")
      ->capture_default_str();
  cmd->add_option("--seed", params.seed, "RNG master seed")
      ->capture_default_str();
  cmd->add_option("--jobs", params.jobs,
                  "Worker threads (output is identical for any value)")
      ->capture_default_str();
  cmd->add_option("--window-radius", params.window_radius,
                  "Simulation window radius in metres (0 = automatic)")
      ->capture_default_str();
  cmd->add_option("--eta", params.eta, "Access bandwidth fraction")
      ->capture_default_str();
  cmd->add_option("--cache", params.cache_files, "Cache capacity C in files")
      ->capture_default_str();
  cmd->add_option("--gamma0-db", params.gamma0_db,
                  "Throughput SINR threshold in dB")
      ->capture_default_str();
  cmd->add_option("--gamma-db", gammas_db,
                  "SINR thresholds (dB) for the coverage estimators");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Cache-enabled mmWave heterogeneous network with integrated wireless "
      "backhaul: analytical metrics and Monte-Carlo validation"};
  app.set_version_flag("--version", std::string("iabnet ") + iabnet_version());
  app.require_subcommand(1);

  // coverage
  auto* c_cov = app.add_subcommand(
      "coverage",
      "SINR coverage probabilities.\nCSV columns: tier,state,gamma_db,"
      "probability (state is los/nlos/total)");
  CommonOpts o_cov;
  add_common(c_cov, o_cov);
  std::vector<double> cov_gammas;
  std::vector<std::string> cov_tiers{"sbs", "mbs", "backhaul"};
  std::string cov_mode = "general";
  int cov_cache = -1;
  c_cov->add_option("--gamma-db", cov_gammas,
                    "SINR thresholds in dB (empty list: header-only CSV)");
  c_cov->add_option("--tier", cov_tiers, "Tiers: sbs, mbs, backhaul")
      ->capture_default_str();
  c_cov->add_option("--mode", cov_mode,
                    "general | noise | interference")
      ->capture_default_str();
  c_cov->add_option("--cache", cov_cache,
                    "Cache capacity C (-1: config value)")
      ->capture_default_str();

  // apt
  auto* c_apt = app.add_subcommand(
      "apt",
      "Average potential throughput at one partition point.\nCSV columns: "
      "quantity,bps_per_m2 (sbs_<access><backhaul> cases, mbs_<state>, "
      "total)");
  CommonOpts o_apt;
  add_common(c_apt, o_apt);
  double apt_eta = 0.5, apt_gamma0 = 10.0;
  int apt_cache = -1;
  c_apt->add_option("--eta", apt_eta, "Access bandwidth fraction")
      ->capture_default_str();
  c_apt->add_option("--cache", apt_cache, "Cache capacity C (-1: config)")
      ->capture_default_str();
  c_apt->add_option("--gamma0-db", apt_gamma0, "SINR threshold in dB")
      ->capture_default_str();

  // ase
  auto* c_ase = app.add_subcommand(
      "ase",
      "Area spectral efficiency at one partition point.\nCSV columns: "
      "quantity,bps_per_hz_per_m2 (sbs, mbs, total)");
  CommonOpts o_ase;
  add_common(c_ase, o_ase);
  double ase_eta = 0.5;
  int ase_cache = -1;
  std::string ase_variant = "general";
  c_ase->add_option("--eta", ase_eta, "Access bandwidth fraction")
      ->capture_default_str();
  c_ase->add_option("--cache", ase_cache, "Cache capacity C (-1: config)")
      ->capture_default_str();
  c_ase->add_option("--variant", ase_variant,
                    "general | noise | interference")
      ->capture_default_str();

  // sweep
  auto* c_sweep = app.add_subcommand(
      "sweep",
      "Grid evaluation over eta and C.\nTable CSV columns: fingerprint,"
      "version,C,eta,apt_bps_per_m2,ase_bps_per_hz_per_m2,ase_noise,"
      "ase_intf,cov_sbs_los,cov_sbs_nlos,cov_mbs_los,cov_mbs_nlos,"
      "cov_bh_los,cov_bh_nlos; followed by a summary block with columns "
      "summary_C,eta_star,delta_eta");
  CommonOpts o_sweep;
  add_common(c_sweep, o_sweep);
  double sw_start = 0.0, sw_stop = 1.0, sw_step = 0.05, sw_gamma0 = 10.0;
  std::vector<int> sw_caches;
  std::string sw_objective = "ase";
  c_sweep->add_option("--eta-start", sw_start, "First eta value")
      ->capture_default_str();
  c_sweep->add_option("--eta-stop", sw_stop, "Last eta value")
      ->capture_default_str();
  c_sweep->add_option("--eta-step", sw_step, "Grid step (must be > 0)")
      ->capture_default_str();
  c_sweep->add_option("--cache", sw_caches, "Cache capacities (default: 0)");
  c_sweep->add_option("--objective", sw_objective,
                      "Optimum summary objective: apt | ase")
      ->capture_default_str();
  c_sweep->add_option("--gamma0-db", sw_gamma0,
                      "SINR threshold (dB) for apt and coverage columns")
      ->capture_default_str();

  // simulate
  auto* c_sim = app.add_subcommand(
      "simulate",
      "Monte-Carlo drop simulation.\nCSV columns: quantity,gamma_db,value,"
      "ci_half_width (95% confidence)");
  CommonOpts o_sim;
  add_common(c_sim, o_sim);
  iabnet_sim_params sim_params;
  iabnet_sim_params_init(&sim_params);
  std::vector<double> sim_gammas;
  add_sim_options(c_sim, sim_params, sim_gammas);

  // compare
  auto* c_cmp = app.add_subcommand(
      "compare",
      "Analytic vs Monte-Carlo side-by-side.\nCSV columns: quantity,"
      "gamma_db,analytic,simulated,ci_half_width,abs_gap,allowed,flag. "
      "Probability rows allow max(--tol-prob, 3*ci); apt/ase rows allow "
      "max(--tol-rel*|analytic|, 3*ci). Exit code 1 when any row is "
      "flagged.");
  CommonOpts o_cmp;
  add_common(c_cmp, o_cmp);
  iabnet_sim_params cmp_params;
  iabnet_sim_params_init(&cmp_params);
  std::vector<double> cmp_gammas{0.0, 5.0, 10.0, 15.0};
  add_sim_options(c_cmp, cmp_params, cmp_gammas);
  double tol_prob = 0.03, tol_rel = 0.25;
  c_cmp->add_option("--tol-prob", tol_prob,
                    "Absolute tolerance for probability rows")
      ->capture_default_str();
  c_cmp->add_option("--tol-rel", tol_rel,
                    "Relative tolerance for apt/ase rows")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (c_cov->parsed())
    return run_coverage(o_cov, cov_gammas, cov_tiers, cov_mode, cov_cache);
  if (c_apt->parsed()) return run_apt(o_apt, apt_eta, apt_cache, apt_gamma0);
  if (c_ase->parsed()) return run_ase(o_ase, ase_eta, ase_cache, ase_variant);
  if (c_sweep->parsed())
    return run_sweep(o_sweep, sw_start, sw_stop, sw_step, sw_caches,
                     sw_objective, sw_gamma0);
  if (c_sim->parsed()) return run_simulate(o_sim, sim_params, sim_gammas);
  if (c_cmp->parsed())
    return run_compare(o_cmp, cmp_params, cmp_gammas, tol_prob, tol_rel);
  return 2;
}
