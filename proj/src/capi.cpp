#include "annuli.h"

#include <cctype>
#include <cstring>
#include <stdexcept>
#include <string>

#include "config.hpp"
#include "counting.hpp"
#include "experiments.hpp"
#include "lattice.hpp"
#include "smoothing.hpp"
#include "stats.hpp"
#include "zeta.hpp"

namespace {

thread_local std::string g_last_error;

annuli_status set_error(annuli_status code, const char* what) {
  g_last_error = what;
  return code;
}

// Maps C++ exceptions from the core onto C status codes.
template <typename F>
annuli_status guarded(F&& f) {
  try {
    f();
    return ANNULI_OK;
  } catch (const annuli::budget_error& e) {
    return set_error(ANNULI_ERR_BUDGET, e.what());
  } catch (const std::domain_error& e) {
    return set_error(ANNULI_ERR_DOMAIN, e.what());
  } catch (const std::invalid_argument& e) {
    return set_error(ANNULI_ERR_INVALID, e.what());
  } catch (const std::runtime_error& e) {
    return set_error(ANNULI_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return set_error(ANNULI_ERR_INTERNAL, e.what());
  }
}

annuli_status require(bool ok, const char* what) {
  return ok ? ANNULI_OK : set_error(ANNULI_ERR_INVALID, what);
}

}  // namespace

struct annuli_lattice {
  annuli::EllipseLattice lat;
};
struct annuli_kernel {
  annuli::SmoothingKernel kernel;
};
struct annuli_spectrum {
  annuli::SpectrumTable spec;
};
struct annuli_config {
  annuli::ExperimentConfig cfg;
};

extern "C" {

const char* annuli_last_error(void) { return g_last_error.c_str(); }

annuli_status annuli_lattice_create(double alpha, annuli_lattice** out) {
  if (annuli_status s = require(out != nullptr, "out is NULL")) return s;
  return guarded([&] { *out = new annuli_lattice{annuli::EllipseLattice(alpha)}; });
}

void annuli_lattice_free(annuli_lattice* lat) { delete lat; }

annuli_status annuli_count_sharp(const annuli_lattice* lat, double t,
                                 int64_t* out) {
  if (annuli_status s = require(lat && out, "lattice/out is NULL")) return s;
  return guarded([&] { *out = annuli::count_sharp(lat->lat, t); });
}

annuli_status annuli_remainder_sharp(const annuli_lattice* lat, double t,
                                     double rho, double* out) {
  if (annuli_status s = require(lat && out, "lattice/out is NULL")) return s;
  return guarded([&] { *out = annuli::remainder_sharp(lat->lat, t, rho); });
}

annuli_status annuli_kernel_create(int grid_points, annuli_kernel** out) {
  if (annuli_status s = require(out != nullptr, "out is NULL")) return s;
  return guarded(
      [&] { *out = new annuli_kernel{annuli::SmoothingKernel(grid_points)}; });
}

void annuli_kernel_free(annuli_kernel* kernel) { delete kernel; }

annuli_status annuli_kernel_eval(const annuli_kernel* kernel, double x,
                                 double* out) {
  if (annuli_status s = require(kernel && out, "kernel/out is NULL")) return s;
  return guarded([&] { *out = kernel->kernel(x); });
}

annuli_status annuli_smooth_remainder(const annuli_lattice* lat,
                                      const annuli_kernel* kernel, double M,
                                      double L, double t, double* out) {
  if (annuli_status s = require(lat && kernel && out, "handle/out is NULL"))
    return s;
  return guarded(
      [&] { *out = annuli::smooth_remainder(lat->lat, kernel->kernel, M, L, t); });
}

annuli_status annuli_theoretical_sigma2(const annuli_lattice* lat,
                                        const annuli_kernel* kernel, double L,
                                        double M, double* out) {
  if (annuli_status s = require(lat && kernel && out, "handle/out is NULL"))
    return s;
  return guarded(
      [&] { *out = annuli::theoretical_sigma2(lat->lat, kernel->kernel, L, M); });
}

annuli_status annuli_spectrum_create(const annuli_lattice* lat,
                                     annuli_side side, double cutoff,
                                     annuli_spectrum** out) {
  if (annuli_status s = require(lat && out, "lattice/out is NULL")) return s;
  return guarded([&] {
    annuli::Side sd = side == ANNULI_PRIMAL ? annuli::Side::primal
                                            : annuli::Side::dual;
    *out = new annuli_spectrum{annuli::SpectrumTable(lat->lat, sd, cutoff)};
  });
}

void annuli_spectrum_free(annuli_spectrum* spec) { delete spec; }

annuli_status annuli_spectrum_size(const annuli_spectrum* spec, int64_t* out) {
  if (annuli_status s = require(spec && out, "spectrum/out is NULL")) return s;
  *out = static_cast<int64_t>(spec->spec.entries().size());
  return ANNULI_OK;
}

annuli_status annuli_spectrum_entry(const annuli_spectrum* spec, int64_t index,
                                    double* squared_norm, int* n, int* m,
                                    int* multiplicity) {
  if (annuli_status s = require(spec, "spectrum is NULL")) return s;
  const auto& entries = spec->spec.entries();
  if (index < 0 || index >= static_cast<int64_t>(entries.size()))
    return set_error(ANNULI_ERR_INVALID, "spectrum index out of range");
  const annuli::SpectrumEntry& e = entries[static_cast<std::size_t>(index)];
  if (squared_norm) *squared_norm = e.squared_norm;
  if (n) *n = e.n;
  if (m) *m = e.m;
  if (multiplicity) *multiplicity = e.multiplicity;
  return ANNULI_OK;
}

annuli_status annuli_spectrum_min_gap(const annuli_spectrum* spec, double* out) {
  if (annuli_status s = require(spec && out, "spectrum/out is NULL")) return s;
  *out = spec->spec.min_gap();
  return ANNULI_OK;
}

annuli_status annuli_spectrum_export_csv(const annuli_spectrum* spec,
                                         const char* path) {
  if (annuli_status s = require(spec && path, "spectrum/path is NULL")) return s;
  return guarded([&] { spec->spec.export_csv(path); });
}

annuli_status annuli_epstein_eval(double gamma, double s_re, double s_im,
                                  annuli_zeta_method method, double* out_re,
                                  double* out_im) {
  if (annuli_status s = require(out_re && out_im, "out is NULL")) return s;
  return guarded([&] {
    annuli::ZetaMethod m = method == ANNULI_ZETA_DIRECT
                               ? annuli::ZetaMethod::direct
                               : annuli::ZetaMethod::integral;
    annuli::ZetaValue v = annuli::epstein_eval(gamma, {s_re, s_im}, m);
    *out_re = v.value.real();
    *out_im = v.value.imag();
  });
}

annuli_status annuli_config_create(annuli_config** out) {
  if (annuli_status s = require(out != nullptr, "out is NULL")) return s;
  return guarded([&] { *out = new annuli_config{}; });
}

annuli_status annuli_config_load(const char* path, annuli_config** out) {
  if (annuli_status s = require(path && out, "path/out is NULL")) return s;
  return guarded(
      [&] { *out = new annuli_config{annuli::load_config(path)}; });
}

void annuli_config_free(annuli_config* cfg) { delete cfg; }

annuli_status annuli_config_set(annuli_config* cfg, const char* key,
                                const char* value) {
  if (annuli_status s = require(cfg && key && value, "cfg/key/value is NULL"))
    return s;
  return guarded([&] {
    // Reuse the TOML path: emit current state, replace the one key, reparse.
    std::string text = annuli::emit_config(cfg->cfg);
    std::string line = std::string(key) + " = ";
    bool string_key = std::strcmp(key, "experiment") == 0 ||
                      std::strcmp(key, "window") == 0 ||
                      std::strcmp(key, "out_dir") == 0;
    bool alpha_name = std::strcmp(key, "alpha") == 0 && value[0] != '\0' &&
                      !(std::isdigit(static_cast<unsigned char>(value[0])) ||
                        value[0] == '.' || value[0] == '-');
    if (string_key || alpha_name)
      line += "\"" + std::string(value) + "\"";
    else
      line += value;
    cfg->cfg = annuli::parse_config_text(text + line + "\n");
  });
}

annuli_status annuli_config_emit(const annuli_config* cfg, char** out) {
  if (annuli_status s = require(cfg && out, "cfg/out is NULL")) return s;
  return guarded([&] {
    std::string text = annuli::emit_config(cfg->cfg);
    char* buf = new char[text.size() + 1];
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
  });
}

void annuli_string_free(char* s) { delete[] s; }

annuli_status annuli_run_experiment(const annuli_config* cfg,
                                    int* exit_status) {
  if (annuli_status s = require(cfg && exit_status, "cfg/out is NULL")) return s;
  return guarded([&] { *exit_status = annuli::run_experiment(cfg->cfg); });
}

}  // extern "C"
