#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "lattice.hpp"

namespace annuli {

using cplx = std::complex<double>;

// Complex Gamma via Lanczos approximation, reflection for Re(s) < 1/2.
cplx gamma_complex(cplx s);

enum class ZetaMethod { direct, integral };

struct ZetaValue {
  double gamma;
  cplx s;
  cplx value;
  ZetaMethod method;
};

// Epstein zeta Z_gamma(s) = (1/4) sum_{k in <1,i*sqrt(gamma)> \ 0} |k|^{-2s}.
// direct: truncated series with an integral tail correction, Re(s) > 1 only.
// integral: theta-integral continuation, valid for all s except 0 and 1.
ZetaValue epstein_eval(double gamma, cplx s, ZetaMethod method);

// chi_gamma(s) = pi^{2s-1} Gamma(1-s) / (Gamma(s) sqrt(gamma)); the
// functional equation reads Z_gamma(s) = chi_gamma(s) Z_{1/gamma}(1-s).
cplx chi_gamma(double gamma, cplx s);

// Sharp count with the jump convention: at x = t^2 exactly on a squared
// norm, the open-ball count plus 2.  Only the truncated-formula comparisons
// use this; the statistics use the plain closed count.
std::int64_t jump_count(const EllipseLattice& lat, double t);

// Hard-truncated dual expansion of the sharp counting function:
//   approx(t) = (pi/d) t^2 - (sqrt(t)/(d pi)) sum_{|k| <= sqrt(N)} cos(2 pi t |k| + pi/4)/|k|^{3/2},
// residual(t) = N_jump(t) - approx(t).
class TruncatedFormula {
 public:
  TruncatedFormula(const EllipseLattice& lat, double N,
                   std::int64_t budget = kDefaultVectorBudget);

  std::pair<double, double> evaluate(double t) const;  // {approx, residual}
  double approx(double t, bool reversed_order = false) const;

 private:
  EllipseLattice lat_;
  std::vector<double> nu_;
  std::vector<double> coeff_;  // mult / nu^{3/2}
};

}  // namespace annuli
