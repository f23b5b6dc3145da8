#pragma once

#include <cstdint>

#include "lattice.hpp"

namespace annuli {

// Annulus ensemble parameters: width rho = 1/L, smoothness M.
struct AnnulusParams {
  double T;
  double L;
  double M;
  double rho() const { return 1.0 / L; }
  // L <= sqrt(M) is advisory: the limit theorems need L/sqrt(M) -> 0.
  bool width_within_smoothness() const { return L <= std::sqrt(M); }
};

// Exact number of lattice vectors with |v| <= t (closed ball), row by row
// with the boundary guard from the lattice module.
std::int64_t count_sharp(const EllipseLattice& lat, double t);

// Normalized sharp annulus remainder
//   S(t, rho) = [N(t+rho) - N(t) - (pi/d)(2 t rho + rho^2)] / sqrt(t).
double remainder_sharp(const EllipseLattice& lat, double t, double rho);

}  // namespace annuli
