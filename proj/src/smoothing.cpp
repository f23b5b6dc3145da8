#include "smoothing.hpp"

#include <cstdio>
#include <stdexcept>

namespace annuli {

namespace {

// Plateau profile: 1 up to the knee, quintic smoothstep fall to 0 at 1.
// A positive-definite kernel (autocorrelation of a bump) is not usable
// here: Cauchy-Schwarz gives int psi_hat <= 1 for any phi * phi^* with
// this support, which suppresses the variance sum ~25% below its 8 pi/(dL)
// asymptote at the desk scales this laboratory runs at.  The plateau keeps
// psi_hat flat where the spectral weight lives while preserving the exact
// truncation at the support edge.
constexpr double kKnee = 0.95;

double plateau(double x) {
  if (x <= kKnee) return 1.0;
  if (x >= 1.0) return 0.0;
  double s = (1.0 - x) / (1.0 - kKnee);
  return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));  // C^2 smoothstep
}

}  // namespace

SmoothingKernel::SmoothingKernel(int grid_points) {
  if (grid_points < 256)
    throw std::invalid_argument("SmoothingKernel: grid too coarse (need >= 256)");
  grid_.resize(grid_points);
  step_ = 1.0 / (grid_points - 1);
  for (int g = 0; g < grid_points; ++g) grid_[g] = plateau(g * step_);
  grid_.back() = 0.0;  // support ends exactly at 1
}

double SmoothingKernel::operator()(double x) const {
  x = std::abs(x);
  if (x >= 1.0) return 0.0;
  double u = x / step_;
  int i = static_cast<int>(u);
  if (i >= static_cast<int>(grid_.size()) - 1) return 0.0;
  double f = u - i;
  // Catmull-Rom through the four surrounding nodes, clamped at the ends.
  int n = static_cast<int>(grid_.size());
  double p0 = grid_[i > 0 ? i - 1 : 0];
  double p1 = grid_[i];
  double p2 = grid_[i + 1];
  double p3 = grid_[i + 2 < n ? i + 2 : n - 1];
  double a = -0.5 * p0 + 1.5 * p1 - 1.5 * p2 + 0.5 * p3;
  double b = p0 - 2.5 * p1 + 2.0 * p2 - 0.5 * p3;
  double cc = -0.5 * p0 + 0.5 * p2;
  double v = ((a * f + b) * f + cc) * f + p1;
  // clamp Catmull-Rom overshoot at the plateau/edge junctions
  if (v < 0.0) return 0.0;
  return v > 1.0 ? 1.0 : v;
}

void SmoothingKernel::export_csv(const std::string& path) const {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::fprintf(f, "x,psi_hat\n");
  for (std::size_t i = 0; i < grid_.size(); ++i)
    std::fprintf(f, "%.17g,%.17g\n", i * step_, grid_[i]);
  std::fclose(f);
}

DualSum::DualSum(const EllipseLattice& lat, const SmoothingKernel& kernel,
                 double M, double L, std::int64_t budget)
    : d_(lat.det_d), M_(M), L_(L), half_shift_(1.0 / (2.0 * L)) {
  if (!(M > 0.0) || !(L > 0.0))
    throw std::invalid_argument("DualSum: need M > 0 and L > 0");
  SpectrumTable spec(lat, Side::dual, M, budget);
  double sqrtM = std::sqrt(M);
  nu_.reserve(spec.entries().size());
  for (const SpectrumEntry& e : spec.entries()) {
    if (!(e.squared_norm > 0.0)) continue;  // k != 0
    double nu = std::sqrt(e.squared_norm);
    double psi = kernel(nu / sqrtM);
    double base = e.multiplicity * psi / (nu * std::sqrt(nu));
    nu_.push_back(nu);
    count_coeff_.push_back(base);
    rem_coeff_.push_back((2.0 / (d_ * M_PI)) * std::sin(M_PI * nu / L) * base);
  }
}

double DualSum::smooth_count(double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("smooth_count: t must be > 0");
  KahanSum s;
  for (std::size_t i = 0; i < nu_.size(); ++i)
    s.add(count_coeff_[i] * phase_cos(t, nu_[i]));
  return M_PI * t * t / d_ - std::sqrt(t) / (d_ * M_PI) * s.value();
}

double DualSum::smooth_remainder(double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("smooth_remainder: t must be > 0");
  KahanSum s;
  for (std::size_t i = 0; i < nu_.size(); ++i)
    s.add(rem_coeff_[i] * phase_sin(t, half_shift_, nu_[i]));
  return s.value();
}

double smooth_count(const EllipseLattice& lat, const SmoothingKernel& kernel,
                    double M, double t) {
  return DualSum(lat, kernel, M, /*L=*/1.0).smooth_count(t);
}

double smooth_remainder(const EllipseLattice& lat, const SmoothingKernel& kernel,
                        double M, double L, double t) {
  return DualSum(lat, kernel, M, L).smooth_remainder(t);
}

}  // namespace annuli
