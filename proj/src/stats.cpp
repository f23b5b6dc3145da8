#include "stats.hpp"

#include <algorithm>
#include <complex>
#include <limits>
#include <stdexcept>

namespace annuli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double smoothstep(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return u * u * (3.0 - 2.0 * u);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

// ---------------------------------------------------------------------------
// WeightWindow
// ---------------------------------------------------------------------------

WeightWindow WeightWindow::gaussian(double center, double width) {
  if (!(width > 0.0) || !(center > 0.0))
    throw std::invalid_argument("WeightWindow: need center, width > 0");
  WeightWindow w;
  w.kind_ = Kind::smooth_gaussian;
  w.center_ = center;
  w.width_ = width;
  return w;
}

WeightWindow WeightWindow::indicator() {
  WeightWindow w;
  w.kind_ = Kind::indicator_1_2;
  return w;
}

WeightWindow WeightWindow::sandwich_lower(double eps) {
  if (!(eps > 0.0) || !(eps < 0.5))
    throw std::invalid_argument("WeightWindow: sandwich eps must be in (0, 1/2)");
  WeightWindow w;
  w.kind_ = Kind::sandwich_lower;
  w.eps_ = eps;
  w.lo_ = 1.0;
  w.hi_ = 2.0;
  w.raw_mass_ = 1.0 - eps;  // each smoothstep edge loses eps/2 of plateau mass
  w.build_inverse_cdf();
  return w;
}

WeightWindow WeightWindow::sandwich_upper(double eps) {
  if (!(eps > 0.0) || !(eps < 0.5))
    throw std::invalid_argument("WeightWindow: sandwich eps must be in (0, 1/2)");
  WeightWindow w;
  w.kind_ = Kind::sandwich_upper;
  w.eps_ = eps;
  w.lo_ = 1.0 - eps;
  w.hi_ = 2.0 + eps;
  w.raw_mass_ = 1.0 + eps;
  w.build_inverse_cdf();
  return w;
}

double WeightWindow::density(double x) const {
  switch (kind_) {
    case Kind::smooth_gaussian: {
      double u = (x - center_) / width_;
      return std::exp(-0.5 * u * u) / (width_ * std::sqrt(2.0 * M_PI));
    }
    case Kind::indicator_1_2:
      return (x >= 1.0 && x <= 2.0) ? 1.0 : 0.0;
    case Kind::sandwich_lower: {
      if (x <= 1.0 || x >= 2.0) return 0.0;
      double raw = std::min(smoothstep((x - 1.0) / eps_), smoothstep((2.0 - x) / eps_));
      return raw / raw_mass_;
    }
    case Kind::sandwich_upper: {
      if (x <= lo_ || x >= hi_) return 0.0;
      double raw = std::min(smoothstep((x - lo_) / eps_), smoothstep((hi_ - x) / eps_));
      return raw / raw_mass_;
    }
  }
  return 0.0;
}

void WeightWindow::build_inverse_cdf() {
  // Tabulate the CDF on a fine grid, then invert onto a uniform grid in
  // probability; sampling is a table lookup plus linear interpolation.
  const int n = 8192;
  double h = (hi_ - lo_) / n;
  std::vector<double> cdf(n + 1, 0.0);
  for (int i = 1; i <= n; ++i) {
    double a = lo_ + (i - 1) * h, b = lo_ + i * h;
    cdf[i] = cdf[i - 1] + 0.5 * h * (density(a) + density(b));
  }
  double total = cdf[n];
  for (double& c : cdf) c /= total;
  inv_cdf_.assign(n + 1, lo_);
  int j = 0;
  for (int i = 0; i <= n; ++i) {
    double u = static_cast<double>(i) / n;
    while (j < n && cdf[j + 1] < u) ++j;
    double span = cdf[j + 1] - cdf[j];
    double f = span > 0.0 ? (u - cdf[j]) / span : 0.0;
    inv_cdf_[i] = lo_ + (j + f) * h;
  }
  inv_cdf_[n] = hi_;
}

double WeightWindow::sample(Rng& rng) const {
  switch (kind_) {
    case Kind::smooth_gaussian: {
      double x;
      do {
        x = center_ + width_ * rng.next_normal();
      } while (!(x > 0.0));
      return x;
    }
    case Kind::indicator_1_2:
      return 1.0 + rng.next_double();
    default: {
      double u = rng.next_double() * (inv_cdf_.size() - 1);
      auto i = static_cast<std::size_t>(u);
      if (i >= inv_cdf_.size() - 1) return inv_cdf_.back();
      double f = u - i;
      return inv_cdf_[i] + f * (inv_cdf_[i + 1] - inv_cdf_[i]);
    }
  }
}

double WeightWindow::quadrature_mass() const {
  double a, b;
  if (kind_ == Kind::smooth_gaussian) {
    a = std::max(center_ - 12.0 * width_, 0.0);
    b = center_ + 12.0 * width_;
  } else {
    a = lo_;
    b = hi_;
  }
  const int n = 1 << 14;  // Simpson
  double h = (b - a) / n;
  KahanSum s;
  for (int i = 0; i <= n; ++i) {
    double w = (i == 0 || i == n) ? 1.0 : ((i % 2) ? 4.0 : 2.0);
    s.add(w * density(a + i * h));
  }
  return s.value() * h / 3.0;
}

// ---------------------------------------------------------------------------
// Ensembles and moments
// ---------------------------------------------------------------------------

SampleEnsemble sample_ensemble(const EllipseLattice& lat,
                               const SmoothingKernel& kernel,
                               const AnnulusParams& params,
                               const WeightWindow& window, int n_samples,
                               std::uint64_t seed, Which which) {
  if (n_samples < 1) throw std::invalid_argument("sample_ensemble: n_samples >= 1");
  SampleEnsemble ens{params, window.kind(), seed, {}};
  ens.samples.resize(n_samples);

  const bool want_smooth = which != Which::sharp;
  const bool want_sharp = which != Which::smooth;
  // The dual sum is the expensive shared state; build it once, evaluate per t.
  const DualSum* dual = nullptr;
  DualSum owned = want_smooth ? DualSum(lat, kernel, params.M, params.L)
                              : DualSum(lat, kernel, 1.0, params.L);
  if (want_smooth) dual = &owned;

  double rho = params.rho();
  std::vector<Sample>& out = ens.samples;
  parallel_for(static_cast<std::size_t>(n_samples), [&](std::size_t i) {
    Rng rng(seed, i);
    double t = params.T * window.sample(rng);
    Sample& s = out[i];
    s.t = t;
    s.s_sharp = want_sharp ? remainder_sharp(lat, t, rho) : kNaN;
    s.s_smooth = want_smooth ? dual->smooth_remainder(t) : kNaN;
  });
  return ens;
}

double gaussian_moment_target(int m) {
  if (m < 1) throw std::invalid_argument("gaussian_moment_target: m >= 1");
  if (m % 2 != 0) return 0.0;
  double v = 1.0;  // (m-1)!! = m! / (2^{m/2} (m/2)!)
  for (int k = m - 1; k > 1; k -= 2) v *= k;
  return v;
}

MomentReport empirical_moment(const SampleEnsemble& ens, int m, double sigma,
                              bool use_smooth) {
  if (ens.samples.empty()) throw std::invalid_argument("empirical_moment: empty ensemble");
  if (m < 1 || !(sigma > 0.0))
    throw std::invalid_argument("empirical_moment: need m >= 1, sigma > 0");
  std::size_t n = ens.samples.size();
  KahanSum sum;
  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = use_smooth ? ens.samples[i].s_smooth : ens.samples[i].s_sharp;
    vals[i] = std::pow(s / sigma, m);
    sum.add(vals[i]);
  }
  double mean = sum.value() / n;
  // Jackknife on the sample mean reduces to the usual standard error.
  KahanSum ss;
  for (double v : vals) ss.add((v - mean) * (v - mean));
  double se = n > 1 ? std::sqrt(ss.value() / (static_cast<double>(n) * (n - 1))) : 0.0;
  return {m, mean, se, gaussian_moment_target(m), sigma};
}

double theoretical_sigma2(const EllipseLattice& lat,
                          const SmoothingKernel& kernel, double L, double M) {
  if (!(L > 0.0) || !(M > 0.0))
    throw std::invalid_argument("theoretical_sigma2: need L, M > 0");
  // Sum over all dual vectors k with weight r(k): per first-quadrant
  // representative (n, m) that is r(n,m) vectors, each carrying another
  // r(n,m), hence the square.
  double c = lat.kappa;
  double radius = std::sqrt(M);  // psi_hat support
  double d = lat.det_d;
  KahanSum s;
  std::int64_t m_max = guarded_col_max(c, radius);
  for (std::int64_t m = 0; m <= m_max; ++m) {
    std::int64_t n_hi = guarded_row_max(m, c, radius);
    for (std::int64_t n = (m == 0 ? 1 : 0); n <= n_hi; ++n) {
      double q = static_cast<double>(n) * n + static_cast<double>(m) * m * c;
      double nu = std::sqrt(q);
      double r = multiplicity_r(static_cast<int>(n), static_cast<int>(m));
      double sn = std::sin(M_PI * nu / L);
      double psi = kernel(nu / radius);
      s.add(r * r * sn * sn * psi * psi / (nu * q));
    }
  }
  return 2.0 / (d * d * M_PI * M_PI) * s.value();
}

double diagonal_D_sum(const EllipseLattice& lat, const SmoothingKernel& kernel,
                      double L, double M, int S_size, double sigma,
                      KernelArg arg) {
  if (S_size < 1 || S_size > 6)
    throw std::invalid_argument("diagonal_D_sum: S_size must be in [1, 6]");
  if (!(sigma > 0.0) || !(L > 0.0) || !(M > 0.0))
    throw std::invalid_argument("diagonal_D_sum: need sigma, L, M > 0");

  double sqrtM = std::sqrt(M);
  double d = lat.det_d;
  const std::complex<double> phase_p = std::polar(1.0, -M_PI / 4.0);  // -i e^{i pi/4}
  auto vectors = enumerate_vectors(lat, Side::dual, sqrtM, /*quadrant_primitive=*/true);

  KahanSum total_re;
  for (const LatticeVector& v : vectors) {
    double nu = std::sqrt(v.squared_norm);
    // Frequencies surviving the kernel: f nu / sqrt(M) < 1 in the
    // per-frequency reading; the per-vector reading has no such cutoff and
    // is truncated where the f^{-3/2} tail is negligible (diagnostic only).
    int F;
    if (arg == KernelArg::per_frequency) {
      F = static_cast<int>(std::ceil(sqrtM / nu)) - 1;
      while (F > 0 && kernel(F * nu / sqrtM) == 0.0) --F;
    } else {
      F = 300;  // f^{-5/2} weight decay; the omitted tail is ~1e-5 relative
    }
    if (F < 1) continue;

    std::vector<std::complex<double>> w(F + 1);
    double psi_fixed = kernel(nu / sqrtM);
    for (int f = 1; f <= F; ++f) {
      double psi = arg == KernelArg::per_frequency ? kernel(f * nu / sqrtM) : psi_fixed;
      double base = std::sin(M_PI * f * nu / L) * psi /
                    (d * M_PI * f * std::sqrt(static_cast<double>(f)));
      w[f] = base * phase_p;  // eps = -1 weight is the conjugate
    }

    // Convolve S_size copies of the signed frequency spectrum; the
    // coefficient at net frequency zero is the constrained tuple sum.
    int half = S_size * F;
    std::vector<std::complex<double>> conv(2 * half + 1, 0.0);
    conv[half] = 1.0;
    for (int step = 0; step < S_size; ++step) {
      std::vector<std::complex<double>> next(conv.size(), 0.0);
      for (int h = 0; h < static_cast<int>(conv.size()); ++h) {
        if (conv[h] == 0.0) continue;
        for (int f = 1; f <= F; ++f) {
          if (h + f < static_cast<int>(conv.size())) next[h + f] += conv[h] * w[f];
          if (h - f >= 0) next[h - f] += conv[h] * std::conj(w[f]);
        }
      }
      conv.swap(next);
    }

    double r = multiplicity_r(v.n, v.m);
    double scale = std::pow(r, S_size) / std::pow(nu, 1.5 * S_size);
    total_re.add(scale * conv[half].real());
  }
  return std::abs(total_re.value()) / std::pow(sigma, S_size);
}

double ks_distance(const SampleEnsemble& ens, double sigma, bool use_smooth) {
  if (ens.samples.size() < 100)
    throw std::invalid_argument("ks_distance: need >= 100 samples");
  if (!(sigma > 0.0)) throw std::invalid_argument("ks_distance: sigma > 0");
  std::vector<double> x(ens.samples.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Sample& s = ens.samples[i];
    x[i] = (use_smooth ? s.s_smooth : s.s_sharp) / sigma;
  }
  std::sort(x.begin(), x.end());
  double n = static_cast<double>(x.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double phi = normal_cdf(x[i]);
    sup = std::max(sup, std::max(phi - i / n, (i + 1) / n - phi));
  }
  return sup;
}

double unsmoothing_gap(const EllipseLattice& lat, const SmoothingKernel& kernel,
                       const AnnulusParams& params, const WeightWindow& window,
                       int n_samples, std::uint64_t seed) {
  SampleEnsemble ens =
      sample_ensemble(lat, kernel, params, window, n_samples, seed, Which::both);
  KahanSum s;
  for (const Sample& smp : ens.samples) {
    double diff = smp.s_sharp - smp.s_smooth;
    s.add(diff * diff);
  }
  return s.value() / n_samples;
}

SandwichReport window_sandwich(const EllipseLattice& lat,
                               const SmoothingKernel& kernel,
                               const AnnulusParams& params, double sigma,
                               double a, double b, int n_samples,
                               std::uint64_t seed, double eps) {
  if (!(a < b)) throw std::invalid_argument("window_sandwich: need a < b");
  auto prob = [&](const WeightWindow& w) {
    SampleEnsemble ens =
        sample_ensemble(lat, kernel, params, w, n_samples, seed, Which::smooth);
    std::int64_t hits = 0;
    for (const Sample& s : ens.samples) {
      double x = s.s_smooth / sigma;
      if (x >= a && x <= b) ++hits;
    }
    double p = static_cast<double>(hits) / n_samples;
    return std::pair<double, double>{p, std::sqrt(p * (1.0 - p) / n_samples)};
  };
  auto [pi, ei] = prob(WeightWindow::indicator());
  auto [pl, el] = prob(WeightWindow::sandwich_lower(eps));
  auto [pu, eu] = prob(WeightWindow::sandwich_upper(eps));
  double slack_lo = 3.0 * (ei + el), slack_hi = 3.0 * (ei + eu);
  bool ok = pi >= (1.0 - eps) * pl - slack_lo && pi <= (1.0 + eps) * pu + slack_hi;
  return {pi, pl, pu, ei, el, eu, ok};
}

}  // namespace annuli
