#include "diophantine.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

namespace annuli {

namespace {

// sqrt of a double-double, one Newton correction on top of the double root.
dd dd_sqrt(dd q) {
  double s = std::sqrt(q.hi);
  if (s == 0.0) return {0.0, 0.0};
  dd r = dd_sub(q, two_prod(s, s));
  return quick_two_sum(s, (r.hi + r.lo) / (2.0 * s));
}

}  // namespace

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("loglog_slope: need >= 2 matched points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("loglog_slope: degenerate abscissae");
  return (n * sxy - sx * sy) / denom;
}

DiophantineReport cf_expansion(double eta, int depth) {
  if (depth < 1 || depth > 60)
    throw std::invalid_argument("cf_expansion: depth must be in [1, 60]");
  DiophantineReport rep;
  rep.eta = eta;
  rep.depth = depth;
  rep.truncated = false;

  long double x = eta;
  long double le = eta;
  std::int64_t p_prev = 0, q_prev = 1;  // p_{-2}, q_{-2}
  std::int64_t p_cur = 1, q_cur = 0;    // p_{-1}, q_{-1}
  for (int k = 0; k < depth; ++k) {
    long double fl = std::floor(x);
    auto a = static_cast<std::int64_t>(fl);
    // Denominators past ~3e9 probe below the precision of a double input;
    // the expansion of the rounded eta diverges from the real number there.
    if (q_cur > 3'000'000'000LL || a < 0 || (k > 0 && a < 1)) {
      rep.truncated = true;
      break;
    }
    std::int64_t p_new = a * p_cur + p_prev;
    std::int64_t q_new = a * q_cur + q_prev;
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_new;
    q_cur = q_new;
    rep.partial_quotients.push_back(a);
    long double err = std::abs(le - static_cast<long double>(p_cur) / q_cur);
    rep.convergents.push_back({p_cur, q_cur, static_cast<double>(err)});
    long double frac = x - fl;
    if (frac < 1e-18L) {  // rational (or precision exhausted)
      rep.truncated = (k + 1 < depth);
      break;
    }
    x = 1.0L / frac;
  }

  // Empirical exponent: |eta - p/q| ~ q^{-K}, K from the OLS slope over the
  // convergents with a trustworthy error value.
  std::vector<double> qs, errs;
  for (const Convergent& c : rep.convergents)
    if (c.q >= 2 && c.abs_error > 1e-17) {
      qs.push_back(static_cast<double>(c.q));
      errs.push_back(c.abs_error);
    }
  rep.exponent_estimate =
      (qs.size() >= 2) ? -loglog_slope(qs, errs)
                       : std::numeric_limits<double>::quiet_NaN();
  return rep;
}

SignProductResult sign_product_Q(const std::vector<double>& z) {
  int m = static_cast<int>(z.size());
  if (m < 1 || m > 16)
    throw std::invalid_argument("sign_product_Q: need 1 <= m <= 16");
  for (double v : z)
    if (!(v > 0.0)) throw std::invalid_argument("sign_product_Q: z_j must be > 0");

  std::vector<double> root(z.size());
  for (int j = 0; j < m; ++j) root[j] = std::sqrt(z[j]);

  double prod = 1.0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    double sum = 0.0;
    for (int j = 0; j < m; ++j)
      sum += ((mask >> j) & 1) ? -root[j] : root[j];
    prod *= sum;
  }

  SignProductResult res{prod, m <= 3, 0.0};
  if (!res.symbolic_available) return res;

  // Expand the product symbolically over monomials in sqrt(z_j): integer
  // coefficients throughout, and all exponents even in the final result, so
  // Q is an integer polynomial in the z_j themselves.
  using Mono = std::array<int, 3>;
  std::map<Mono, long long> poly{{Mono{0, 0, 0}, 1}};
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::map<Mono, long long> next;
    for (const auto& [mono, coeff] : poly)
      for (int j = 0; j < m; ++j) {
        Mono mm = mono;
        ++mm[j];
        next[mm] += ((mask >> j) & 1) ? -coeff : coeff;
      }
    poly.clear();
    for (const auto& [mono, coeff] : next)
      if (coeff != 0) poly[mono] = coeff;
  }
  double val = 0.0;
  for (const auto& [mono, coeff] : poly) {
    for (int e : mono)
      if (e % 2 != 0)
        throw std::logic_error("sign_product_Q: odd exponent in expanded Q");
    double term = static_cast<double>(coeff);
    for (int j = 0; j < m; ++j)
      for (int e = 0; e < mono[j] / 2; ++e) term *= z[j];
    val += term;
  }
  res.symbolic_value = val;
  return res;
}

namespace {

struct ZEntry {
  double z;
  double root;
  dd root_dd;
};

std::int64_t binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    if (r > (std::int64_t{1} << 61) / n) return std::int64_t{1} << 62;  // saturate
    r = r * (n - k + i) / i;
  }
  return r;
}

struct MinSearch {
  const std::vector<ZEntry>& zs;
  int m;
  MinCombination best;
  std::vector<int> idx;
  std::vector<int> sgn;

  void consider() {
    // Exact zero iff every distinct value's signs cancel; combinations that
    // merely evaluate near zero get a double-double recheck instead.
    double sum = 0.0;
    for (int j = 0; j < m; ++j) sum += sgn[j] * zs[idx[j]].root;
    double a = std::abs(sum);
    if (a >= best.min_value) return;
    if (a < 1e-8) {
      std::map<int, int> net;
      for (int j = 0; j < m; ++j) net[idx[j]] += sgn[j];
      bool cancels = true;
      for (const auto& [i, c] : net) cancels = cancels && c == 0;
      if (cancels) return;
      dd acc{0.0, 0.0};
      for (int j = 0; j < m; ++j)
        acc = dd_add(acc, dd_mul(zs[idx[j]].root_dd, static_cast<double>(sgn[j])));
      a = std::abs(acc.hi + acc.lo);
      if (a < 1e-12) return;  // identity the screening missed; not a small value
      if (a >= best.min_value) return;
    }
    best.min_value = a;
    best.z.clear();
    best.signs.clear();
    for (int j = 0; j < m; ++j) {
      best.z.push_back(zs[idx[j]].z);
      best.signs.push_back(sgn[j]);
    }
  }

  void recurse(int j, int lo) {
    if (j == m) {
      consider();
      return;
    }
    for (int i = lo; i < static_cast<int>(zs.size()); ++i) {
      idx[j] = i;
      // The overall sign is free: pin the first slot to +1.
      sgn[j] = 1;
      recurse(j + 1, i);
      if (j > 0) {
        sgn[j] = -1;
        recurse(j + 1, i);
      }
    }
  }
};

}  // namespace

MinCombination min_sqrt_combination(double eta, int m, double Mmax,
                                    std::int64_t budget) {
  if (m < 1 || m > 8)
    throw std::invalid_argument("min_sqrt_combination: need 1 <= m <= 8");
  if (!(eta > 0.0) || !(Mmax >= 1.0))
    throw std::invalid_argument("min_sqrt_combination: need eta > 0, Mmax >= 1");

  std::vector<ZEntry> zs;
  for (std::int64_t a = 0; static_cast<double>(a) * a <= Mmax; ++a)
    for (std::int64_t b = 0;; ++b) {
      dd q = dd_add(two_prod(eta, static_cast<double>(b) * b),
                    static_cast<double>(a) * a);
      double z = q.hi + q.lo;
      if (z > Mmax) break;
      if (z > 0.0) zs.push_back({z, std::sqrt(z), dd_sqrt(q)});
    }
  std::sort(zs.begin(), zs.end(),
            [](const ZEntry& x, const ZEntry& y) { return x.z < y.z; });
  zs.erase(std::unique(zs.begin(), zs.end(),
                       [](const ZEntry& x, const ZEntry& y) { return x.z == y.z; }),
           zs.end());
  if (zs.empty())
    throw std::invalid_argument("min_sqrt_combination: no admissible z values");

  std::int64_t combos =
      binom(static_cast<std::int64_t>(zs.size()) + m - 1, m);
  if (combos > budget / (std::int64_t{1} << (m - 1)))
    throw budget_error("min_sqrt_combination: search space exceeds budget");

  MinSearch search{zs, m,
                   {std::numeric_limits<double>::infinity(), {}, {}},
                   std::vector<int>(m), std::vector<int>(m)};
  search.recurse(0, 0);
  return search.best;
}

double min_dual_norm_gap(const EllipseLattice& lat, double M,
                         std::int64_t budget) {
  SpectrumTable spec(lat, Side::dual, M, budget);
  double gap = std::numeric_limits<double>::infinity();
  double prev = -1.0;
  for (const SpectrumEntry& e : spec.entries()) {
    if (!(e.squared_norm > 0.0)) continue;
    double norm = std::sqrt(e.squared_norm);
    if (prev >= 0.0) gap = std::min(gap, norm - prev);
    prev = norm;
  }
  if (!std::isfinite(gap))
    throw std::invalid_argument("min_dual_norm_gap: fewer than two norms below M");
  return gap;
}

}  // namespace annuli
