#include "lattice.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace annuli {

EllipseLattice::EllipseLattice(double a) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw std::invalid_argument("aspect ratio alpha must be positive");
  alpha = a;
  gamma = a * a;
  beta = 1.0 / a;
  kappa = beta * beta;
  det_d = a;
}

double squared_norm(int n, int m, const EllipseLattice& lat, Side side) {
  double c = lat.coeff(side);
  return static_cast<double>(n) * n + static_cast<double>(m) * m * c;
}

int multiplicity_r(int n, int m) {
  if (n == 0 && m == 0) return 1;
  if (n == 0 || m == 0) return 2;
  return 4;
}

namespace {

// Exact (double-double) squared norm n^2 + m^2*c, c the stored double.
dd sqnorm_dd(std::int64_t n, std::int64_t m, double c) {
  double n2 = static_cast<double>(n * n);  // exact for |n| < 2^26
  dd m2c = dd_mul(two_prod(static_cast<double>(m), static_cast<double>(m)), c);
  return dd_add(m2c, n2);
}

// Is (n, m) inside the closed ball |v| <= radius?  Near the boundary
// (within 1e-9 * radius^2 relative) the float test is re-verified in
// double-double: a misclassified boundary vector changes counts by O(1).
bool in_ball_r(std::int64_t n, std::int64_t m, double c, double radius) {
  double r2 = radius * radius;
  double q = static_cast<double>(n) * n + static_cast<double>(m) * m * c;
  if (std::abs(q - r2) > 1e-9 * std::max(r2, 1.0)) return q <= r2;
  return dd_cmp(sqnorm_dd(n, m, c), two_prod(radius, radius)) <= 0;
}

}  // namespace

// Largest n >= 0 with n^2 + m^2*c <= radius^2, or -1 if none.
std::int64_t guarded_row_max(std::int64_t m, double c, double radius) {
  double rem = radius * radius - static_cast<double>(m) * m * c;
  if (rem < -1e-9 * std::max(radius * radius, 1.0))
    return in_ball_r(0, m, c, radius) ? 0 : -1;
  std::int64_t n = static_cast<std::int64_t>(std::floor(std::sqrt(std::max(rem, 0.0))));
  while (n > 0 && !in_ball_r(n, m, c, radius)) --n;
  while (in_ball_r(n + 1, m, c, radius)) ++n;
  if (!in_ball_r(n, m, c, radius)) return -1;
  return n;
}

// Largest m >= 0 with m^2*c <= radius^2.
std::int64_t guarded_col_max(double c, double radius) {
  std::int64_t m =
      static_cast<std::int64_t>(std::floor(radius / std::sqrt(c)));
  while (m > 0 && !in_ball_r(0, m, c, radius)) --m;
  while (in_ball_r(0, m + 1, c, radius)) ++m;
  return m;
}

namespace {
std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
}  // namespace

std::vector<LatticeVector> enumerate_vectors(const EllipseLattice& lat,
                                             Side side, double radius,
                                             bool quadrant_primitive,
                                             std::int64_t budget) {
  if (radius < 0.0) throw std::invalid_argument("radius must be >= 0");
  double c = lat.coeff(side);
  std::vector<LatticeVector> out;
  std::int64_t m_max = guarded_col_max(c, radius);  // |m| <= radius/sqrt(c)
  auto push = [&](std::int64_t n, std::int64_t m) {
    if (static_cast<std::int64_t>(out.size()) >= budget)
      throw budget_error("enumerate_vectors: vector budget exceeded");
    out.push_back({static_cast<int>(n), static_cast<int>(m), side,
                   squared_norm(static_cast<int>(n), static_cast<int>(m), lat, side)});
  };
  for (std::int64_t m = quadrant_primitive ? 0 : -m_max; m <= m_max; ++m) {
    std::int64_t n_hi = guarded_row_max(m, c, radius);
    if (n_hi < 0) continue;
    if (quadrant_primitive) {
      for (std::int64_t n = 0; n <= n_hi; ++n) {
        if (n == 0 && m == 0) continue;
        if (gcd64(n, m) != 1) continue;
        push(n, m);
      }
    } else {
      for (std::int64_t n = -n_hi; n <= n_hi; ++n) push(n, m);
    }
  }
  return out;
}

SpectrumTable::SpectrumTable(const EllipseLattice& lat, Side side,
                             double cutoff, std::int64_t budget)
    : cutoff_(cutoff) {
  if (!(cutoff > 0.0)) throw std::invalid_argument("spectrum cutoff must be > 0");
  double c = lat.coeff(side);
  double radius = std::sqrt(cutoff);
  struct Class {
    dd v;
    int n, m, r;
  };
  std::vector<Class> classes;
  std::int64_t m_max = guarded_col_max(c, radius);
  for (std::int64_t m = 0; m <= m_max; ++m) {
    std::int64_t n_hi = guarded_row_max(m, c, radius);
    for (std::int64_t n = 0; n <= n_hi; ++n) {
      if (static_cast<std::int64_t>(classes.size()) >= budget)
        throw budget_error("norm_spectrum: enumeration budget exceeded");
      classes.push_back({sqnorm_dd(n, m, c), static_cast<int>(n),
                         static_cast<int>(m),
                         multiplicity_r(static_cast<int>(n), static_cast<int>(m))});
    }
  }
  std::sort(classes.begin(), classes.end(), [](const Class& a, const Class& b) {
    int cm = dd_cmp(a.v, b.v);
    if (cm != 0) return cm < 0;
    if (a.n != b.n) return a.n < b.n;
    return a.m < b.m;
  });
  // Equal-norm detection in double-double: classes merge only on exact
  // (hi, lo) equality, never by a tolerance comparison.
  dd last{0.0, 0.0};
  for (const Class& cl : classes) {
    if (!entries_.empty() && dd_cmp(last, cl.v) == 0) {
      entries_.back().multiplicity += cl.r;
    } else {
      entries_.push_back({cl.v.hi + cl.v.lo, cl.n, cl.m, cl.r});
      last = cl.v;
    }
  }
  min_gap_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < entries_.size(); ++i)
    min_gap_ = std::min(min_gap_,
                        entries_[i].squared_norm - entries_[i - 1].squared_norm);
}

std::size_t SpectrumTable::nearest_index(double x) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), x,
      [](const SpectrumEntry& e, double v) { return e.squared_norm < v; });
  if (it == entries_.begin()) return 0;
  if (it == entries_.end()) return entries_.size() - 1;
  std::size_t hi = static_cast<std::size_t>(it - entries_.begin());
  std::size_t lo = hi - 1;
  double dlo = x - entries_[lo].squared_norm;
  double dhi = entries_[hi].squared_norm - x;
  // At an exact midpoint the smaller norm is chosen.
  return (dlo <= dhi) ? lo : hi;
}

double SpectrumTable::delta_at(double x) const {
  if (entries_.size() < 2) return std::numeric_limits<double>::infinity();
  std::size_t i = nearest_index(x);
  double gap = std::numeric_limits<double>::infinity();
  if (i > 0) gap = std::min(gap, entries_[i].squared_norm - entries_[i - 1].squared_norm);
  if (i + 1 < entries_.size())
    gap = std::min(gap, entries_[i + 1].squared_norm - entries_[i].squared_norm);
  return gap;
}

void SpectrumTable::export_csv(const std::string& path) const {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::fprintf(f, "squared_norm,n,m,multiplicity\n");
  for (const SpectrumEntry& e : entries_)
    std::fprintf(f, "%.17g,%d,%d,%d\n", e.squared_norm, e.n, e.m, e.multiplicity);
  std::fclose(f);
}

std::int64_t pair_near_count(const EllipseLattice& lat, double R, double delta,
                             std::int64_t budget) {
  if (!(R > 0.0) || delta < 0.0)
    throw std::invalid_argument("pair_near_count: need R > 0, delta >= 0");
  SpectrumTable spec(lat, Side::primal, 2.0 * R + delta, budget);
  const auto& e = spec.entries();
  std::int64_t count = 0;
  std::size_t jlo = 0, jhi = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    double a = e[i].squared_norm;
    if (a < R || a > 2.0 * R) continue;
    if (jlo < i) jlo = i;
    while (jlo < e.size() && e[jlo].squared_norm < a) ++jlo;
    if (jhi < jlo) jhi = jlo;
    while (jhi < e.size() && e[jhi].squared_norm <= a + delta) ++jhi;
    std::int64_t partners = 0;
    for (std::size_t j = jlo; j < jhi; ++j) partners += e[j].multiplicity;
    count += static_cast<std::int64_t>(e[i].multiplicity) * partners;
  }
  return count;
}

}  // namespace annuli
