#include "zeta.hpp"

#include <stdexcept>

namespace annuli {

namespace {

// Lanczos, g = 7, 9 terms.
constexpr double kLanczos[9] = {
    0.99999999999980993,    676.5203681218851,     -1259.1392167224028,
    771.32342877765313,     -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7};

cplx lanczos_gamma(cplx z) {
  // valid for Re(z) >= 0.5
  z -= 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  cplx t = z + 7.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

}  // namespace

cplx gamma_complex(cplx s) {
  if (s.real() < 0.5) {
    // reflection: Gamma(s) Gamma(1-s) = pi / sin(pi s)
    return M_PI / (std::sin(M_PI * s) * lanczos_gamma(1.0 - s));
  }
  return lanczos_gamma(s);
}

cplx chi_gamma(double gamma, cplx s) {
  cplx chi = std::pow(M_PI, 2.0 * s - 1.0) * gamma_complex(1.0 - s) /
             gamma_complex(s);
  return chi / std::sqrt(gamma);
}

namespace {

// ---- direct series -------------------------------------------------------

// Sum over primal classes of weight * q^{-s} for q <= X, streamed row by
// row, plus the vector count (the tail correction needs E(X)).
struct DirectSum {
  cplx sum;
  double vector_count;
};

DirectSum direct_partial(double gamma, cplx s, double X) {
  EllipseLattice lat(std::sqrt(gamma));
  double radius = std::sqrt(X);
  KahanSum re, im, cnt;
  std::int64_t m_max = guarded_col_max(gamma, radius);
  for (std::int64_t m = 0; m <= m_max; ++m) {
    std::int64_t n_hi = guarded_row_max(m, gamma, radius);
    for (std::int64_t n = (m == 0 ? 1 : 0); n <= n_hi; ++n) {
      double q = static_cast<double>(n) * n + static_cast<double>(m) * m * gamma;
      double w = multiplicity_r(static_cast<int>(n), static_cast<int>(m));
      cplx term = w * std::exp(-s * std::log(q));
      re.add(term.real());
      im.add(term.imag());
      cnt.add(w);
    }
  }
  return {cplx{re.value(), im.value()}, cnt.value()};
}

cplx epstein_direct(double gamma, cplx s) {
  if (!(s.real() > 1.0))
    throw std::domain_error("epstein direct series requires Re(s) > 1");
  double d = std::sqrt(gamma);  // det of <1, i*alpha>
  double sigma = s.real();
  // Truncation + tail correction
  //   sum_{q > X} q^{-s} = (pi/d) X^{1-s}/(s-1) - X^{-s} E(X) + O(|s|^2 X^{3/4 - sigma - 1}),
  // E(X) the lattice-count remainder at the cutoff (known exactly there).
  // Plain truncation alone cannot reach small tolerances near sigma = 1.
  double abs_s = std::abs(s);
  double target = 1e-10 / (4.0 * (1.0 + abs_s) * (1.0 + abs_s));
  double X = std::pow(1.0 / target, 1.0 / (sigma + 0.25));
  X = std::min(std::max(X, 1e4), 4e6);
  DirectSum p = direct_partial(gamma, s, X);
  cplx tail = (M_PI / d) * std::exp((1.0 - s) * std::log(X)) / (s - 1.0);
  double EX = p.vector_count - M_PI * X / d;
  tail -= std::exp(-s * std::log(X)) * EX;
  return 0.25 * (p.sum + tail);
}

// ---- theta-integral continuation ----------------------------------------

// Distinct squared norms with multiplicities, enough terms that the theta
// series at x >= 1 is exhausted far below double precision.
std::vector<std::pair<double, double>> theta_classes(double gamma) {
  EllipseLattice lat(std::sqrt(gamma));
  // e^{-pi q} < 1e-18 relative to the leading term once q - q_min > 14
  SpectrumTable spec(lat, Side::primal, 20.0 + std::min(1.0, gamma));
  std::vector<std::pair<double, double>> cls;
  for (const SpectrumEntry& e : spec.entries())
    if (e.squared_norm > 0.0)
      cls.emplace_back(e.squared_norm, static_cast<double>(e.multiplicity));
  return cls;
}

// psi_gamma(x) = (1/4) sum' e^{-pi q x}, truncated when terms fall below
// 1e-16 of the running value.
double theta_psi(const std::vector<std::pair<double, double>>& cls, double x) {
  double sum = 0.0;
  for (const auto& [q, w] : cls) {
    double term = w * std::exp(-M_PI * q * x);
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return 0.25 * sum;
}

template <typename F>
cplx adaptive_simpson(const F& f, double a, double b, cplx fa, cplx fm, cplx fb,
                      double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  cplx flm = f(lm), frm = f(rm);
  cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  cplx delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) < 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, tol / 2, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, tol / 2, depth - 1);
}

template <typename F>
cplx integrate(const F& f, double a, double b, double tol) {
  cplx fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return adaptive_simpson(f, a, b, fa, fm, fb, tol, 48);
}

cplx epstein_integral(double gamma, cplx s) {
  if (std::abs(s) < 1e-14 || std::abs(s - 1.0) < 1e-14)
    throw std::domain_error("epstein integral representation has poles at s = 0, 1");
  double sg = std::sqrt(gamma);
  auto cls_g = theta_classes(gamma);
  auto cls_ig = theta_classes(1.0 / gamma);
  double qmin_g = cls_g.front().first;
  double qmin_ig = cls_ig.front().first;
  // cutoff where the integrand tail is below 1e-18 of unity
  auto cut = [&](double qmin, double sig) {
    double X = 2.0;
    for (int i = 0; i < 8; ++i)
      X = std::max(2.0, (42.0 + std::abs(sig - 1.0) * std::log(X)) / (M_PI * qmin));
    return X;
  };
  double sigma = s.real();
  double X1 = cut(qmin_g, sigma);
  double X2 = cut(qmin_ig, 1.0 - sigma);
  cplx i1 = integrate(
      [&](double x) { return std::exp((s - 1.0) * std::log(x)) * theta_psi(cls_g, x); },
      1.0, X1, 1e-14);
  cplx i2 = integrate(
      [&](double x) { return std::exp(-s * std::log(x)) * theta_psi(cls_ig, x); },
      1.0, X2, 1e-14);
  cplx rep = i1 + i2 / sg - (s - sg * (s - 1.0)) / (4.0 * sg * s * (1.0 - s));
  // Gamma(s) pi^{-s} Z = rep
  return rep * std::pow(M_PI, s) / gamma_complex(s);
}

}  // namespace

ZetaValue epstein_eval(double gamma, cplx s, ZetaMethod method) {
  if (!(gamma > 0.0)) throw std::invalid_argument("epstein_eval: gamma must be > 0");
  cplx v = (method == ZetaMethod::direct) ? epstein_direct(gamma, s)
                                          : epstein_integral(gamma, s);
  return {gamma, s, v, method};
}

std::int64_t jump_count(const EllipseLattice& lat, double t) {
  double c = lat.gamma;
  dd t2 = two_prod(t, t);
  std::int64_t closed = 0, boundary = 0;
  std::int64_t m_max = guarded_col_max(c, t);
  for (std::int64_t m = -m_max; m <= m_max; ++m) {
    std::int64_t n_hi = guarded_row_max(m, c, t);
    if (n_hi < 0) continue;
    closed += 2 * n_hi + 1;
    // exact boundary hit?
    double n2 = static_cast<double>(n_hi) * n_hi;
    dd q = dd_add(dd_mul(two_prod(static_cast<double>(m), static_cast<double>(m)), c), n2);
    if (dd_cmp(q, t2) == 0) boundary += (n_hi == 0) ? 1 : 2;
  }
  if (boundary == 0) return closed;
  return closed - boundary + 2;
}

TruncatedFormula::TruncatedFormula(const EllipseLattice& lat, double N,
                                   std::int64_t budget)
    : lat_(lat) {
  if (!(N > 0.0)) throw std::invalid_argument("TruncatedFormula: N must be > 0");
  SpectrumTable spec(lat, Side::dual, N, budget);
  for (const SpectrumEntry& e : spec.entries()) {
    if (!(e.squared_norm > 0.0)) continue;
    double nu = std::sqrt(e.squared_norm);
    nu_.push_back(nu);
    coeff_.push_back(e.multiplicity / (nu * std::sqrt(nu)));
  }
}

double TruncatedFormula::approx(double t, bool reversed_order) const {
  KahanSum s;
  if (reversed_order) {
    for (std::size_t i = nu_.size(); i-- > 0;)
      s.add(coeff_[i] * phase_cos(t, nu_[i]));
  } else {
    for (std::size_t i = 0; i < nu_.size(); ++i)
      s.add(coeff_[i] * phase_cos(t, nu_[i]));
  }
  double d = lat_.det_d;
  return M_PI * t * t / d - std::sqrt(t) / (d * M_PI) * s.value();
}

std::pair<double, double> TruncatedFormula::evaluate(double t) const {
  double a = approx(t);
  return {a, static_cast<double>(jump_count(lat_, t)) - a};
}

}  // namespace annuli
