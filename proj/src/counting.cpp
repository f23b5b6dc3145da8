#include "counting.hpp"

#include <stdexcept>

namespace annuli {

std::int64_t count_sharp(const EllipseLattice& lat, double t) {
  if (t < 0.0) throw std::invalid_argument("count_sharp: t must be >= 0");
  double c = lat.gamma;
  std::int64_t m_max = guarded_col_max(c, t);
  std::int64_t count = 0;
  for (std::int64_t m = -m_max; m <= m_max; ++m) {
    std::int64_t n_hi = guarded_row_max(m, c, t);
    if (n_hi >= 0) count += 2 * n_hi + 1;
  }
  return count;
}

double remainder_sharp(const EllipseLattice& lat, double t, double rho) {
  if (!(t > 0.0) || !(rho > 0.0))
    throw std::invalid_argument("remainder_sharp: need t > 0 and rho > 0");
  double annulus = static_cast<double>(count_sharp(lat, t + rho) - count_sharp(lat, t));
  double area = (M_PI / lat.det_d) * (2.0 * t * rho + rho * rho);
  return (annulus - area) / std::sqrt(t);
}

}  // namespace annuli
