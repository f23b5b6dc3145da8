#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lattice.hpp"

namespace annuli {

struct Convergent {
  std::int64_t p;
  std::int64_t q;
  double abs_error;  // |eta - p/q|
};

// Continued-fraction diagnostics.  exponent_estimate is the empirical K in
// |eta - p/q| >> q^{-K}, fitted over the convergents; it never certifies
// the Diophantine property, it only reports a trend.
struct DiophantineReport {
  double eta;
  int depth;              // requested
  bool truncated;         // precision limit reached before depth
  std::vector<std::int64_t> partial_quotients;
  std::vector<Convergent> convergents;
  double exponent_estimate;
};

DiophantineReport cf_expansion(double eta, int depth);

// Q(z) = prod over all sign vectors of sum_j delta_j sqrt(z_j); an integer
// polynomial in the z_j of degree 2^{m-1}.  For m <= 3 a symbolic expansion
// with exact integer coefficients is evaluated alongside the numeric product.
struct SignProductResult {
  double value;              // numeric product
  bool symbolic_available;   // m <= 3
  double symbolic_value;     // exact-coefficient polynomial evaluated at z
};

SignProductResult sign_product_Q(const std::vector<double>& z);

// Exhaustive minimum of |sum eps_j sqrt(z_j)| over z_j = a_j^2 + eta b_j^2
// <= Mmax and sign vectors, exact-zero combinations excluded.
struct MinCombination {
  double min_value;
  std::vector<double> z;      // attaining tuple
  std::vector<int> signs;
};

MinCombination min_sqrt_combination(double eta, int m, double Mmax,
                                    std::int64_t budget = 200'000'000);

// Minimal gap between distinct dual norms with squared norm <= M.
double min_dual_norm_gap(const EllipseLattice& lat, double M,
                         std::int64_t budget = kDefaultVectorBudget);

// Least-squares slope of log(y) against log(x); used for all empirical
// exponent trend reports.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace annuli
