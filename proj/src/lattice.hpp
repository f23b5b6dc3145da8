#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "common.hpp"

namespace annuli {

enum class Side { primal, dual };

// Rectangular lattice <1, i*alpha> and its dual <1, i*beta>, beta = 1/alpha.
// Squared norms are n^2 + m^2*gamma (primal) or n^2 + m^2*kappa (dual).
struct EllipseLattice {
  double alpha;
  double gamma;   // alpha^2
  double beta;    // 1/alpha
  double kappa;   // beta^2
  double det_d;   // det(Lambda) = alpha

  explicit EllipseLattice(double a);

  double coeff(Side side) const { return side == Side::primal ? gamma : kappa; }
  // det of the chosen side's lattice.
  double det(Side side) const { return side == Side::primal ? alpha : beta; }
};

struct LatticeVector {
  int n;
  int m;
  Side side;
  double squared_norm;
};

double squared_norm(int n, int m, const EllipseLattice& lat, Side side);

// Multiplicity r(v): 1 at the origin, 2 on an axis, 4 otherwise.
int multiplicity_r(int n, int m);

inline constexpr std::int64_t kDefaultVectorBudget = 100'000'000;

// All lattice vectors with |v| <= radius, or (quadrant_primitive) only
// first-quadrant primitive ones: gcd(n, m) = 1, n, m >= 0, not both 0.
std::vector<LatticeVector> enumerate_vectors(
    const EllipseLattice& lat, Side side, double radius,
    bool quadrant_primitive = false,
    std::int64_t budget = kDefaultVectorBudget);

// One sign class (|n|, |m|) of vectors sharing a squared norm; distinct
// classes with exactly equal norm (double-double comparison) are merged
// into one SpectrumEntry.
struct SpectrumEntry {
  double squared_norm;
  int n;              // representative, n, m >= 0
  int m;
  int multiplicity;   // total vector count over merged classes
};

class SpectrumTable {
 public:
  SpectrumTable(const EllipseLattice& lat, Side side, double cutoff,
                std::int64_t budget = kDefaultVectorBudget);

  double cutoff() const { return cutoff_; }
  const std::vector<SpectrumEntry>& entries() const { return entries_; }
  double min_gap() const { return min_gap_; }

  // Spectrum-gap function delta at x: the gap neighborhood of the squared
  // norm nearest to x; at an exact midpoint the smaller norm is chosen.
  double delta_at(double x) const;

  // Index of the entry whose squared norm is nearest to x (tie -> lower).
  std::size_t nearest_index(double x) const;

  void export_csv(const std::string& path) const;

 private:
  double cutoff_;
  std::vector<SpectrumEntry> entries_;
  double min_gap_;
};

// Boundary-guarded row extents: largest n >= 0 with n^2 + m^2*c <= radius^2
// (or -1 if the row misses the ball), and largest m >= 0 with m^2*c <=
// radius^2.  Near-boundary cases are settled in double-double.
std::int64_t guarded_row_max(std::int64_t m, double c, double radius);
std::int64_t guarded_col_max(double c, double radius);

// Exact count of ordered vector pairs (k, l) with R <= |k|^2 <= 2R and
// |k|^2 <= |l|^2 <= |k|^2 + delta, by a two-pointer sweep over the sorted
// spectrum.
std::int64_t pair_near_count(const EllipseLattice& lat, double R, double delta,
                             std::int64_t budget = kDefaultVectorBudget);

}  // namespace annuli
