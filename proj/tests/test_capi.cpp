#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include "doctest.h"
#include "iabnet/iabnet.h"

namespace {

struct Cfg {
  iabnet_config* h = iabnet_config_create();
  ~Cfg() { iabnet_config_destroy(h); }
};

struct Eng {
  explicit Eng(const iabnet_config* cfg) : h(iabnet_engine_create(cfg)) {}
  ~Eng() { iabnet_engine_destroy(h); }
  iabnet_engine* h;
};

}  // namespace

TEST_CASE("config handles create, set, get, and validate") {
  Cfg cfg;
  REQUIRE(cfg.h != nullptr);
  CHECK(iabnet_config_validate(cfg.h) == IABNET_OK);

  CHECK(iabnet_config_set(cfg.h, "cache.C", "250") == IABNET_OK);
  char buf[64];
  CHECK(iabnet_config_get(cfg.h, "cache.C", buf, sizeof buf) == IABNET_OK);
  CHECK(std::string(buf) == "250");

  CHECK(iabnet_config_set(cfg.h, "no.such.key", "1") == IABNET_USAGE);
  CHECK(std::string(iabnet_last_error()).find("no.such.key") !=
        std::string::npos);

  CHECK(iabnet_config_set(cfg.h, "density.lambda_s", "-2") == IABNET_OK);
  CHECK(iabnet_config_validate(cfg.h) == IABNET_USAGE);
  CHECK(std::string(iabnet_last_error()).find("density.lambda_s") !=
        std::string::npos);
}

TEST_CASE("fingerprints are stable and sensitive") {
  Cfg a, b;
  CHECK(iabnet_config_fingerprint(a.h) == iabnet_config_fingerprint(b.h));
  CHECK(iabnet_config_set(b.h, "power.P_s_tot", "8.5") == IABNET_OK);
  CHECK(iabnet_config_fingerprint(a.h) != iabnet_config_fingerprint(b.h));
}

TEST_CASE("config files load with clear errors") {
  const char* path = "capi_test_config.tmp";
  {
    std::ofstream out(path);
    out << "# test\npower.P_s_tot=8.0\ncache.C=10\n";
  }
  Cfg cfg;
  CHECK(iabnet_config_load_file(cfg.h, path) == IABNET_OK);
  char buf[64];
  CHECK(iabnet_config_get(cfg.h, "power.P_s_tot", buf, sizeof buf) ==
        IABNET_OK);
  CHECK(std::string(buf) == "8");
  std::remove(path);

  CHECK(iabnet_config_load_file(cfg.h, "definitely_missing.cfg") ==
        IABNET_USAGE);
}

TEST_CASE("serialization is returned as an owned string") {
  Cfg cfg;
  char* text = nullptr;
  REQUIRE(iabnet_config_serialize(cfg.h, &text) == IABNET_OK);
  REQUIRE(text != nullptr);
  CHECK(std::string(text).find("density.lambda_s=") != std::string::npos);
  iabnet_free_string(text);
}

TEST_CASE("engine rejects invalid configs") {
  Cfg cfg;
  CHECK(iabnet_config_set(cfg.h, "radio.W", "-1") == IABNET_OK);
  CHECK(iabnet_engine_create(cfg.h) == nullptr);
  CHECK(std::strlen(iabnet_last_error()) > 0);
}

TEST_CASE("coverage, apt, and ase flow through the C surface") {
  Cfg cfg;
  Eng eng(cfg.h);
  REQUIRE(eng.h != nullptr);

  double cov[3];
  REQUIRE(iabnet_coverage(eng.h, IABNET_TIER_SBS, 10.0, IABNET_MODE_GENERAL,
                          -1, cov) == IABNET_OK);
  CHECK(cov[2] == doctest::Approx(cov[0] + cov[1]).epsilon(1e-12));
  CHECK(cov[2] > 0.0);
  CHECK(cov[2] < 1.0);

  CHECK(iabnet_coverage(eng.h, 9, 10.0, IABNET_MODE_GENERAL, -1, cov) ==
        IABNET_USAGE);
  CHECK(iabnet_coverage(eng.h, IABNET_TIER_SBS, 10.0, 9, -1, cov) ==
        IABNET_USAGE);

  double apt[7];
  REQUIRE(iabnet_apt(eng.h, 0.5, 100, 5.0, apt) == IABNET_OK);
  CHECK(apt[6] == doctest::Approx(1319.7).epsilon(2e-3));
  CHECK(iabnet_apt(eng.h, 1.5, 100, 5.0, apt) == IABNET_USAGE);

  double ase[3];
  REQUIRE(iabnet_ase(eng.h, 0.5, 100, IABNET_MODE_GENERAL, ase) == IABNET_OK);
  CHECK(ase[2] == doctest::Approx(8.2024e-5).epsilon(2e-3));
  CHECK(ase[2] == doctest::Approx(ase[0] + ase[1]).epsilon(1e-12));

  double ccdf4[4];
  REQUIRE(iabnet_rate_ccdf_sbs(cfg.h, 0.0, 20.0, 150.0, 0.5, 100, ccdf4) ==
          IABNET_OK);
  CHECK(ccdf4[0] == 1.0);
  double ccdf2[2];
  REQUIRE(iabnet_rate_ccdf_mbs(cfg.h, 0.0, 80.0, 0.5, 100, ccdf2) ==
          IABNET_OK);
  CHECK(ccdf2[0] == 1.0);

  double hit = -1.0;
  REQUIRE(iabnet_cache_hit_ratio(cfg.h, 0, &hit) == IABNET_OK);
  CHECK(hit == 0.0);
  int cap = 0;
  REQUIRE(iabnet_max_cache_capacity(cfg.h, &cap) == IABNET_OK);
  CHECK(cap == 112);
  double mass = 0.0;
  REQUIRE(iabnet_association_mass(cfg.h, IABNET_TIER_SBS, 0, &mass) ==
          IABNET_OK);
  CHECK(mass == doctest::Approx(0.33484).epsilon(5e-4));
}

TEST_CASE("simulation CSV is deterministic across worker counts") {
  Cfg cfg;
  iabnet_sim_params params;
  iabnet_sim_params_init(&params);
  params.drops = 1500;
  params.seed = 99;
  const double gammas[2] = {0.0, 10.0};

  params.jobs = 1;
  char* a = nullptr;
  REQUIRE(iabnet_simulate_csv(cfg.h, &params, gammas, 2, &a) == IABNET_OK);
  params.jobs = 6;
  char* b = nullptr;
  REQUIRE(iabnet_simulate_csv(cfg.h, &params, gammas, 2, &b) == IABNET_OK);
  CHECK(std::string(a) == std::string(b));
  CHECK(std::string(a).find("quantity,gamma_db,value,ci_half_width") == 0);
  iabnet_free_string(a);
  iabnet_free_string(b);

  params.drops = 0;
  char* c = nullptr;
  CHECK(iabnet_simulate_csv(cfg.h, &params, gammas, 2, &c) == IABNET_USAGE);
}

TEST_CASE("compare CSV reports rows and maps flags onto the status") {
  Cfg cfg;
  Eng eng(cfg.h);
  REQUIRE(eng.h != nullptr);
  iabnet_sim_params params;
  iabnet_sim_params_init(&params);
  params.drops = 1200;
  params.seed = 7;
  params.jobs = 4;
  const double gammas[1] = {10.0};
  char* csv = nullptr;
  const iabnet_status s =
      iabnet_compare_csv(eng.h, &params, gammas, 1, 0.03, 0.25, &csv);
  REQUIRE(csv != nullptr);
  CHECK((s == IABNET_OK || s == IABNET_TOLERANCE));
  const std::string text(csv);
  CHECK(text.find("assoc_sbs_los") != std::string::npos);
  CHECK(text.find("cov_bh_los") != std::string::npos);
  CHECK(text.find("apt,") != std::string::npos);
  iabnet_free_string(csv);
}

TEST_CASE("version and error plumbing behave") {
  CHECK(std::string(iabnet_version()) == "1.0.0");
  CHECK(iabnet_config_validate(nullptr) == IABNET_USAGE);
  CHECK(iabnet_coverage(nullptr, 0, 0.0, 0, -1, nullptr) == IABNET_USAGE);
}
