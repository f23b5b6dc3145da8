// Acceptance gate: every headline tolerance of the laboratory, evaluated in
// one run, one PASS/FAIL line per criterion.  Exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "counting.hpp"
#include "diophantine.hpp"
#include "experiments.hpp"
#include "lattice.hpp"
#include "smoothing.hpp"
#include "stats.hpp"
#include "zeta.hpp"

using namespace annuli;

namespace {

int g_failures = 0;

void report(int id, bool pass, const std::string& what) {
  std::printf("[%2d] %s  %s\n", id, pass ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::int64_t brute_count(double alpha, double t) {
  double g = alpha * alpha;
  std::int64_t count = 0;
  auto n_max = static_cast<std::int64_t>(t) + 2;
  auto m_max = static_cast<std::int64_t>(t / alpha) + 2;
  for (std::int64_t n = -n_max; n <= n_max; ++n)
    for (std::int64_t m = -m_max; m <= m_max; ++m)
      if (static_cast<double>(n) * n + static_cast<double>(m) * m * g <= t * t)
        ++count;
  return count;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --- criteria ---------------------------------------------------------------

void c1_oracle_counting() {
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(1001, 0);
  int mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    double alpha = 0.3 + 2.7 * rng.next_double();
    double t = 1.0 + 199.0 * rng.next_double();
    if (count_sharp(EllipseLattice(alpha), t) != brute_count(alpha, t))
      ++mismatches;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(1, mismatches == 0 && secs < 10.0,
         "sharp count == brute force on 100 random (alpha, t); mismatches=" +
             std::to_string(mismatches) + ", " + fmt(secs) + " s");
}

void c2_multiplicity_law() {
  int violations = 0;
  for (double alpha : {std::pow(2.0, 0.25), std::exp(1.0)}) {
    SpectrumTable spec(EllipseLattice(alpha), Side::primal, 1e4);
    for (const SpectrumEntry& e : spec.entries()) {
      if (e.squared_norm <= 0.0) continue;
      int expect = (e.n > 0 && e.m > 0) ? 4 : 2;
      if (e.multiplicity != expect) ++violations;
    }
  }
  report(2, violations == 0,
         "norm multiplicities are 4 off-axis / 2 on-axis up to 1e4; violations=" +
             std::to_string(violations));
}

void c3_mean_vanishing() {
  EllipseLattice lat(std::exp(1.0));
  SmoothingKernel kernel;
  AnnulusParams params{1e4, 20.0, 8000.0};
  auto window = WeightWindow::gaussian(1.5, 0.25);
  auto ens = sample_ensemble(lat, kernel, params, window, 200000, 303,
                             Which::smooth);
  auto m1 = empirical_moment(ens, 1, 1.0);
  bool ok = std::abs(m1.empirical) <= 3.0 * m1.stderr_est;
  report(3, ok,
         "smoothed remainder has vanishing mean: |" + fmt(m1.empirical) +
             "| <= 3 * " + fmt(m1.stderr_est));
}

void c4_variance_formula() {
  EllipseLattice lat(std::exp(1.0));
  SmoothingKernel kernel;
  double L = 30.0, M = L * L * L;
  double s2 = theoretical_sigma2(lat, kernel, L, M);
  double asym = 8.0 * M_PI / (lat.det_d * L);
  double rel = std::abs(s2 / asym - 1.0);
  double dsum = diagonal_D_sum(lat, kernel, L, M, 2, std::sqrt(s2));
  double id_err = std::abs(dsum - 1.0);
  report(4, rel <= 0.10 && id_err <= 1e-6,
         "sigma^2 formula: " + fmt(s2) + " vs asymptote " + fmt(asym) +
             " (rel " + fmt(rel) + "); pair-diagonal identity error " +
             fmt(id_err));
}

SampleEnsemble shared_ensemble() {
  EllipseLattice lat(std::exp(1.0));
  SmoothingKernel kernel;
  AnnulusParams params{1e4, 30.0, 27000.0};
  auto window = WeightWindow::gaussian(1.5, 0.25);
  return sample_ensemble(lat, kernel, params, window, 100000, 404, Which::smooth);
}

void c5_variance_ensemble(const SampleEnsemble& ens, double sigma2) {
  double asym = 8.0 * M_PI / (std::exp(1.0) * 30.0);
  auto m1 = empirical_moment(ens, 1, 1.0);
  auto m2 = empirical_moment(ens, 2, 1.0);
  double var = m2.empirical - m1.empirical * m1.empirical;
  double ratio = var / asym;
  report(5, ratio >= 0.85 && ratio <= 1.15,
         "ensemble variance / asymptote = " + fmt(ratio) + " in [0.85, 1.15]" +
             " (formula value " + fmt(sigma2 / asym) + ")");
}

void c6_moments(const SampleEnsemble& ens, double sigma) {
  auto m3 = empirical_moment(ens, 3, sigma);
  auto m4 = empirical_moment(ens, 4, sigma);
  bool ok = std::abs(m3.empirical) <= 0.2 && m4.empirical >= 2.6 &&
            m4.empirical <= 3.4;
  report(6, ok,
         "gaussian moments: M3 = " + fmt(m3.empirical) + " (|.| <= 0.2), M4 = " +
             fmt(m4.empirical) + " (in [2.6, 3.4])");
}

void c7_distribution(const SampleEnsemble& ens, double sigma) {
  double ks = ks_distance(ens, sigma);
  EllipseLattice lat(std::exp(1.0));
  SmoothingKernel kernel;
  AnnulusParams params{1e4, 30.0, 27000.0};
  auto sw = window_sandwich(lat, kernel, params, sigma, -1.0, 1.0, 20000, 505,
                            0.05);
  report(7, ks <= 0.02 && sw.consistent,
         "KS distance to normal = " + fmt(ks) + " (<= 0.02); sandwich p = " +
             fmt(sw.p_lower) + " <= " + fmt(sw.p_indicator) + " <= " +
             fmt(sw.p_upper) + " consistent=" + (sw.consistent ? "yes" : "no"));
}

void c8_unsmoothing() {
  EllipseLattice lat(std::sqrt(2.0));
  SmoothingKernel kernel;
  auto window = WeightWindow::gaussian(1.5, 0.25);
  double g3 = unsmoothing_gap(lat, kernel, {5000.0, 20.0, 1e3}, window, 1500, 606);
  double g4 = unsmoothing_gap(lat, kernel, {5000.0, 20.0, 1e4}, window, 1500, 606);
  bool ok = g3 / g4 >= 2.0 && g4 <= 10.0 / std::sqrt(1e4);
  report(8, ok,
         "sharp/smooth mean-square gap: " + fmt(g3) + " -> " + fmt(g4) +
             " (ratio " + fmt(g3 / g4) + " >= 2, fine gap <= 0.1)");
}

void c9_poisson_truncation() {
  EllipseLattice lat(std::sqrt(2.0));
  TruncatedFormula coarse(lat, 1e2);
  TruncatedFormula fine(lat, 1e6);
  Rng rng(707, 0);
  double rms_c = 0.0, rms_f = 0.0;
  int n = 1000;
  for (int i = 0; i < n; ++i) {
    double t = 100.0 + 100.0 * rng.next_double();
    double rc = coarse.evaluate(t).second;
    double rf = fine.evaluate(t).second;
    rms_c += rc * rc;
    rms_f += rf * rf;
  }
  rms_c = std::sqrt(rms_c / n);
  rms_f = std::sqrt(rms_f / n);
  report(9, rms_c / rms_f >= 3.0,
         "truncated-formula RMS residual: N=1e2 " + fmt(rms_c) + " vs N=1e6 " +
             fmt(rms_f) + " (ratio " + fmt(rms_c / rms_f) + " >= 3)");
}

void c10_epstein() {
  double expect = 1.5067030099229850;  // zeta(2) * beta(2)
  double z2 = epstein_eval(1.0, {2.0, 0.0}, ZetaMethod::direct).value.real();
  bool a = std::abs(z2 - expect) <= 1e-6;

  cplx s{2.0, 0.7};
  cplx lhs = epstein_eval(2.0, s, ZetaMethod::integral).value;
  cplx rhs = chi_gamma(2.0, s) *
             epstein_eval(0.5, 1.0 - s, ZetaMethod::integral).value;
  double feq = std::abs(lhs - rhs);
  bool b = feq <= 1e-8;

  bool c = true;
  std::string res_msg;
  for (double gamma : {1.0, 2.0}) {
    cplx sp{1.0 + 1e-4, 0.0};
    double residue =
        ((sp - 1.0) * epstein_eval(gamma, sp, ZetaMethod::integral).value).real();
    double target = M_PI / (4.0 * std::sqrt(gamma));
    c = c && std::abs(residue / target - 1.0) <= 1e-3;
  }
  report(10, a && b && c,
         "Epstein zeta: Z_1(2) err " + fmt(std::abs(z2 - expect)) +
             " <= 1e-6; functional-equation residual " + fmt(feq) +
             " <= 1e-8; residue pi/(4 sqrt(gamma)) to 1e-3");
}

void c11_diophantine() {
  Rng rng(808, 0);
  double worst_pair = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double z1 = 0.1 + 10.0 * rng.next_double();
    double z2 = 0.1 + 10.0 * rng.next_double();
    double q = sign_product_Q({z1, z2}).value;
    double expect = (z1 - z2) * (z1 - z2);
    worst_pair = std::max(
        worst_pair, std::abs(q - expect) / std::max(1.0, std::abs(expect)));
  }
  bool a = worst_pair <= 1e-10;

  double worst_sym = 0.0;
  for (int i = 0; i < 100; ++i) {
    std::vector<double> z{0.5 + 5.0 * rng.next_double(),
                          0.5 + 5.0 * rng.next_double(),
                          0.5 + 5.0 * rng.next_double()};
    auto res = sign_product_Q(z);
    worst_sym = std::max(worst_sym, std::abs(res.symbolic_value - res.value) /
                                        std::max(1.0, std::abs(res.value)));
  }
  bool b = worst_sym <= 1e-6;

  EllipseLattice lat(std::exp(1.0));  // kappa = e^{-2}, irrational
  std::vector<double> Ms{10.0, 100.0, 1e3, 1e4}, gaps;
  bool positive = true;
  for (double M : Ms) {
    double g = min_dual_norm_gap(lat, M);
    positive = positive && g > 0.0;
    gaps.push_back(g);
  }
  double slope = loglog_slope(Ms, gaps);
  bool c = positive && std::isfinite(slope);
  report(11, a && b && c,
         "diophantine: pair identity err " + fmt(worst_pair) +
             "; m=3 symbolic err " + fmt(worst_sym) +
             "; dual norm gaps positive, log-log slope " + fmt(slope));
}

void c12_determinism() {
  namespace fs = std::filesystem;
  ExperimentConfig cfg;
  cfg.experiment = "variance";
  cfg.alpha_name = "sqrt2";
  cfg.alpha = std::sqrt(2.0);
  cfg.T = 1000.0;
  cfg.L = 10.0;
  cfg.M = 1000.0;
  cfg.n_samples = 2000;
  cfg.seed = 909;

  auto base = fs::temp_directory_path() / "annuli_acceptance_det";
  fs::remove_all(base);
  std::string reports[2];
  const char* threads[2] = {"1", "4"};
  for (int i = 0; i < 2; ++i) {
    setenv("ANNULI_THREADS", threads[i], 1);
    auto dir = base / ("threads_" + std::string(threads[i]));
    cfg.out_dir = dir.string();
    run_experiment(cfg);  // pass/fail of the experiment itself is irrelevant here
    reports[i] = slurp(dir / "report.json");
  }
  unsetenv("ANNULI_THREADS");
  bool ok = !reports[0].empty() && reports[0] == reports[1];
  fs::remove_all(base);
  report(12, ok,
         "byte-identical report.json for 1 vs 4 worker threads (" +
             std::to_string(reports[0].size()) + " bytes)");
}

}  // namespace

int main() {
  std::printf("annuli acceptance gate\n");
  c1_oracle_counting();
  c2_multiplicity_law();
  c3_mean_vanishing();
  c4_variance_formula();

  EllipseLattice lat(std::exp(1.0));
  SmoothingKernel kernel;
  double sigma2 = theoretical_sigma2(lat, kernel, 30.0, 27000.0);
  SampleEnsemble ens = shared_ensemble();
  c5_variance_ensemble(ens, sigma2);
  c6_moments(ens, std::sqrt(sigma2));
  c7_distribution(ens, std::sqrt(sigma2));

  c8_unsmoothing();
  c9_poisson_truncation();
  c10_epstein();
  c11_diophantine();
  c12_determinism();

  std::printf("%s (%d criteria failed)\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
              g_failures);
  return g_failures == 0 ? 0 : 1;
}
