#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <annuli.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>

TEST_CASE("lattice create / count / remainder through the C API") {
  annuli_lattice* lat = nullptr;
  REQUIRE(annuli_lattice_create(1.0, &lat) == ANNULI_OK);
  int64_t n = -1;
  CHECK(annuli_count_sharp(lat, 5.0, &n) == ANNULI_OK);
  CHECK(n == 81);
  double s = 0.0;
  CHECK(annuli_remainder_sharp(lat, 100.0, 0.1, &s) == ANNULI_OK);
  CHECK(std::isfinite(s));
  // invalid arguments surface as status codes, not exceptions
  CHECK(annuli_count_sharp(lat, -1.0, &n) == ANNULI_ERR_INVALID);
  CHECK(std::strlen(annuli_last_error()) > 0);
  CHECK(annuli_remainder_sharp(lat, 10.0, 0.0, &s) == ANNULI_ERR_INVALID);
  annuli_lattice_free(lat);

  CHECK(annuli_lattice_create(-2.0, &lat) == ANNULI_ERR_INVALID);
  CHECK(annuli_lattice_create(1.0, nullptr) == ANNULI_ERR_INVALID);
  CHECK(annuli_count_sharp(nullptr, 1.0, &n) == ANNULI_ERR_INVALID);
  annuli_lattice_free(nullptr);  // free of NULL is a no-op
}

TEST_CASE("kernel and smooth remainder") {
  annuli_kernel* k = nullptr;
  REQUIRE(annuli_kernel_create(4096, &k) == ANNULI_OK);
  double v = -1.0;
  CHECK(annuli_kernel_eval(k, 0.0, &v) == ANNULI_OK);
  CHECK(v == doctest::Approx(1.0));
  CHECK(annuli_kernel_eval(k, 2.0, &v) == ANNULI_OK);
  CHECK(v == 0.0);
  CHECK(annuli_kernel_create(1, &k) == ANNULI_ERR_INVALID);

  annuli_kernel* kk = nullptr;
  REQUIRE(annuli_kernel_create(4096, &kk) == ANNULI_OK);
  annuli_lattice* lat = nullptr;
  REQUIRE(annuli_lattice_create(std::sqrt(2.0), &lat) == ANNULI_OK);
  double s = 0.0, sig2 = 0.0;
  CHECK(annuli_smooth_remainder(lat, kk, 1000.0, 20.0, 500.0, &s) == ANNULI_OK);
  CHECK(std::isfinite(s));
  CHECK(annuli_theoretical_sigma2(lat, kk, 20.0, 8000.0, &sig2) == ANNULI_OK);
  CHECK(sig2 > 0.0);
  CHECK(annuli_smooth_remainder(lat, kk, -1.0, 20.0, 500.0, &s) ==
        ANNULI_ERR_INVALID);
  annuli_kernel_free(kk);
  annuli_kernel_free(k);
  annuli_lattice_free(lat);
}

TEST_CASE("spectrum handles") {
  annuli_lattice* lat = nullptr;
  REQUIRE(annuli_lattice_create(1.0, &lat) == ANNULI_OK);
  annuli_spectrum* spec = nullptr;
  REQUIRE(annuli_spectrum_create(lat, ANNULI_PRIMAL, 50.0, &spec) == ANNULI_OK);
  int64_t size = 0;
  CHECK(annuli_spectrum_size(spec, &size) == ANNULI_OK);
  CHECK(size > 5);
  double q;
  int n, m, mult;
  CHECK(annuli_spectrum_entry(spec, 0, &q, &n, &m, &mult) == ANNULI_OK);
  CHECK(q == 0.0);
  CHECK(mult == 1);
  CHECK(annuli_spectrum_entry(spec, 1, &q, &n, &m, &mult) == ANNULI_OK);
  CHECK(q == 1.0);
  CHECK(mult == 4);
  CHECK(annuli_spectrum_entry(spec, size, &q, &n, &m, &mult) ==
        ANNULI_ERR_INVALID);
  double gap = 0.0;
  CHECK(annuli_spectrum_min_gap(spec, &gap) == ANNULI_OK);
  CHECK(gap > 0.0);
  auto path = std::filesystem::temp_directory_path() / "annuli_capi_spec.csv";
  CHECK(annuli_spectrum_export_csv(spec, path.string().c_str()) == ANNULI_OK);
  CHECK(std::filesystem::exists(path));
  std::filesystem::remove(path);
  CHECK(annuli_spectrum_export_csv(spec, "/nonexistent_dir_xyz/out.csv") ==
        ANNULI_ERR_IO);
  annuli_spectrum_free(spec);
  annuli_lattice_free(lat);
}

TEST_CASE("epstein zeta through the C API") {
  double re = 0.0, im = 0.0;
  CHECK(annuli_epstein_eval(1.0, 2.0, 0.0, ANNULI_ZETA_DIRECT, &re, &im) ==
        ANNULI_OK);
  CHECK(re == doctest::Approx(1.5067030).epsilon(1e-6));
  CHECK(std::abs(im) < 1e-8);
  double re2, im2;
  CHECK(annuli_epstein_eval(1.0, 2.0, 0.0, ANNULI_ZETA_INTEGRAL, &re2, &im2) ==
        ANNULI_OK);
  CHECK(std::abs(re - re2) < 1e-8);
  // poles map to the domain status
  CHECK(annuli_epstein_eval(1.0, 1.0, 0.0, ANNULI_ZETA_INTEGRAL, &re, &im) ==
        ANNULI_ERR_DOMAIN);
  CHECK(annuli_epstein_eval(1.0, 0.5, 0.0, ANNULI_ZETA_DIRECT, &re, &im) ==
        ANNULI_ERR_DOMAIN);
}

TEST_CASE("config handles and experiment dispatch") {
  annuli_config* cfg = nullptr;
  REQUIRE(annuli_config_create(&cfg) == ANNULI_OK);
  CHECK(annuli_config_set(cfg, "experiment", "zeta_check") == ANNULI_OK);
  CHECK(annuli_config_set(cfg, "seed", "11") == ANNULI_OK);
  CHECK(annuli_config_set(cfg, "no_such_key", "1") == ANNULI_ERR_INVALID);
  CHECK(annuli_config_set(cfg, "experiment", "bogus") == ANNULI_ERR_INVALID);

  char* text = nullptr;
  REQUIRE(annuli_config_emit(cfg, &text) == ANNULI_OK);
  std::string toml(text);
  annuli_string_free(text);
  CHECK(toml.find("experiment = \"zeta_check\"") != std::string::npos);
  CHECK(toml.find("seed = 11") != std::string::npos);

  auto out = std::filesystem::temp_directory_path() / "annuli_capi_run";
  std::filesystem::create_directories(out);
  CHECK(annuli_config_set(cfg, "out_dir", out.string().c_str()) == ANNULI_OK);
  int status = -1;
  CHECK(annuli_run_experiment(cfg, &status) == ANNULI_OK);
  CHECK(status == 0);
  CHECK(std::filesystem::exists(out / "report.json"));
  std::filesystem::remove_all(out);
  annuli_config_free(cfg);

  // load from file
  auto path = std::filesystem::temp_directory_path() / "annuli_capi_cfg.toml";
  {
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    std::fputs("experiment = \"spectrum\"\nT = 100\n", f);
    std::fclose(f);
  }
  annuli_config* loaded = nullptr;
  CHECK(annuli_config_load(path.string().c_str(), &loaded) == ANNULI_OK);
  annuli_config_free(loaded);
  std::filesystem::remove(path);
  annuli_config* missing = nullptr;
  CHECK(annuli_config_load("/no/such/file.toml", &missing) != ANNULI_OK);
}
