#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "counting.hpp"
#include "lattice.hpp"
#include "smoothing.hpp"

namespace annuli {

// Averaging weight omega: t is drawn as T * X with X ~ omega.  The smooth
// default is a Gaussian (rapid two-sided decay); the hard window is
// uniform on [1, 2]; the sandwich pair brackets the hard window by smooth
// plateau functions chi- <= 1_{[1,2]} <= chi+ whose mass differs from 1 by
// at most the build tolerance eps.
class WeightWindow {
 public:
  enum class Kind { smooth_gaussian, indicator_1_2, sandwich_lower, sandwich_upper };

  static WeightWindow gaussian(double center, double width);
  static WeightWindow indicator();
  static WeightWindow sandwich_lower(double eps);
  static WeightWindow sandwich_upper(double eps);

  Kind kind() const { return kind_; }
  // Mass-normalized density at x.
  double density(double x) const;
  // Total mass of the un-normalized window (1 +- eps for the sandwich pair,
  // 1 for the others); the sandwich inequalities need it.
  double raw_mass() const { return raw_mass_; }
  // Draw X ~ density.
  double sample(Rng& rng) const;
  // Quadrature check that the normalized density integrates to 1.
  double quadrature_mass() const;

 private:
  WeightWindow() = default;
  void build_inverse_cdf();

  Kind kind_ = Kind::indicator_1_2;
  double center_ = 1.5, width_ = 0.25;  // gaussian
  double eps_ = 0.0;                    // sandwich edge width
  double raw_mass_ = 1.0;
  double lo_ = 1.0, hi_ = 2.0;          // sandwich support
  std::vector<double> inv_cdf_;         // tabulated inverse CDF (sandwich)
};

enum class Which { sharp, smooth, both };

struct Sample {
  double t;
  double s_sharp;   // NaN unless requested
  double s_smooth;  // NaN unless requested
};

struct SampleEnsemble {
  AnnulusParams params;
  WeightWindow::Kind window;
  std::uint64_t seed;
  std::vector<Sample> samples;
};

// Monte Carlo realization of the averaging operator: i.i.d. t = T * X,
// X ~ window; parallel over samples with one RNG stream per index, so the
// result is independent of thread count.
SampleEnsemble sample_ensemble(const EllipseLattice& lat,
                               const SmoothingKernel& kernel,
                               const AnnulusParams& params,
                               const WeightWindow& window, int n_samples,
                               std::uint64_t seed, Which which);

struct MomentReport {
  int order;
  double empirical;
  double stderr_est;       // jackknife
  double gaussian_target;  // 0 odd, m!/(2^{m/2}(m/2)!) even
  double sigma;            // normalization used
};

double gaussian_moment_target(int m);

// Mean of (S/sigma)^m over the ensemble (smooth remainder by default).
MomentReport empirical_moment(const SampleEnsemble& ens, int m, double sigma,
                              bool use_smooth = true);

// sigma^2 = (2/d^2 pi^2) sum_{k in dual \ 0} r(k) sin^2(pi|k|/L)/|k|^3
//           * psi_hat^2(|k|/sqrt(M));  asymptotically 8 pi/(d L).
double theoretical_sigma2(const EllipseLattice& lat,
                          const SmoothingKernel& kernel, double L, double M);

// Which argument the kernel factor takes inside the D_n product: the
// per-frequency form psi_hat(f_j|n|/sqrt(M)) is the one consistent with the
// moment expansion (and the one the |S|=2 identity holds for); the
// per-vector form psi_hat(|n|/sqrt(M)) is kept as a diagnostic.
enum class KernelArg { per_frequency, per_vector };

// sigma^{-|S|} |sum'_n D_n(S)| over first-quadrant primitive dual vectors,
// with D_n(S) the principal-diagonal sum over frequency/sign tuples
// (f_j >= 1, eps_j = +-1, sum eps_j f_j = 0).  The multiplicity enters as
// r(n)^{|S|}: one factor per vector in the product, which is what makes
// sum'_n D_n(S) equal sigma^2 at |S| = 2.
double diagonal_D_sum(const EllipseLattice& lat, const SmoothingKernel& kernel,
                      double L, double M, int S_size, double sigma,
                      KernelArg arg = KernelArg::per_frequency);

// Kolmogorov-Smirnov sup-distance of the empirical law of S/sigma from the
// standard normal.
double ks_distance(const SampleEnsemble& ens, double sigma,
                   bool use_smooth = true);

// Monte Carlo mean of |S_sharp - S_smooth|^2 at rho = 1/L.
double unsmoothing_gap(const EllipseLattice& lat, const SmoothingKernel& kernel,
                       const AnnulusParams& params, const WeightWindow& window,
                       int n_samples, std::uint64_t seed);

// Indicator-window sandwich: P(S_smooth/sigma in [a, b]) estimated under the
// hard window and under the smooth bracketing pair.
struct SandwichReport {
  double p_indicator, p_lower, p_upper;
  double err_indicator, err_lower, err_upper;  // binomial standard errors
  bool consistent;  // (1-eps) p_lower - slack <= p_ind <= (1+eps) p_upper + slack
};

SandwichReport window_sandwich(const EllipseLattice& lat,
                               const SmoothingKernel& kernel,
                               const AnnulusParams& params, double sigma,
                               double a, double b, int n_samples,
                               std::uint64_t seed, double eps = 0.05);

}  // namespace annuli
