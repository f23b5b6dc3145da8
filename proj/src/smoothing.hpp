#pragma once

#include <string>
#include <vector>

#include "lattice.hpp"

namespace annuli {

// Tabulated Fourier transform psi_hat of the mollifier psi: a smooth
// plateau, identically 1 up to a knee near the support edge, falling
// smoothly to 0 at 1.  psi_hat is even, equals 1 at 0 and vanishes for
// |x| >= 1, so dual sums truncate exactly at |k| = sqrt(M).
class SmoothingKernel {
 public:
  explicit SmoothingKernel(int grid_points = 4096);

  // psi_hat(|x|); cubic interpolation between grid nodes, exact 0 beyond
  // the support.
  double operator()(double x) const;

  int grid_points() const { return static_cast<int>(grid_.size()); }
  double grid_value(int i) const { return grid_[i]; }
  double grid_step() const { return step_; }

  void export_csv(const std::string& path) const;

 private:
  std::vector<double> grid_;  // psi_hat on [0, 1], uniform
  double step_;
};

// Dual-lattice trigonometric sum truncated at |k| < sqrt(M): distinct dual
// norms nu (ascending) with per-norm coefficients folded in.  Shared,
// immutable, and cheap to evaluate per t.
class DualSum {
 public:
  DualSum(const EllipseLattice& lat, const SmoothingKernel& kernel, double M,
          double L, std::int64_t budget = kDefaultVectorBudget);

  // Smoothed counting function via the truncated dual cosine sum.
  double smooth_count(double t) const;

  // Smoothed normalized remainder S~(t); this truncated sum is the
  // definition used by all the statistics.
  double smooth_remainder(double t) const;

  std::size_t term_count() const { return nu_.size(); }
  double M() const { return M_; }
  double L() const { return L_; }

 private:
  double d_;
  double M_;
  double L_;
  double half_shift_;                // 1/(2L)
  std::vector<double> nu_;           // distinct dual norms, ascending
  std::vector<double> count_coeff_;  // mult * psi_hat / nu^{3/2}
  std::vector<double> rem_coeff_;    // (2/d pi) mult sin(pi nu/L) psi_hat / nu^{3/2}
};

// One-shot conveniences matching the operation signatures.
double smooth_count(const EllipseLattice& lat, const SmoothingKernel& kernel,
                    double M, double t);
double smooth_remainder(const EllipseLattice& lat, const SmoothingKernel& kernel,
                        double M, double L, double t);

}  // namespace annuli
