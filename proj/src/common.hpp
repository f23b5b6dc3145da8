#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace annuli {

// Thrown when an enumeration would exceed the configured memory budget.
class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Double-double arithmetic. Used for boundary classification in lattice
// enumeration and for phase reduction of large oscillatory arguments.
// ---------------------------------------------------------------------------

struct dd {
  double hi = 0.0;
  double lo = 0.0;
};

inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline dd quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline dd dd_add(dd a, dd b) {
  dd s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline dd dd_add(dd a, double b) {
  dd s = two_sum(a.hi, b);
  s.lo += a.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline dd dd_mul(dd a, dd b) {
  dd p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline dd dd_mul(dd a, double b) {
  dd p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline dd dd_sub(dd a, dd b) { return dd_add(a, dd{-b.hi, -b.lo}); }

inline int dd_cmp(dd a, dd b) {
  if (a.hi < b.hi) return -1;
  if (a.hi > b.hi) return 1;
  if (a.lo < b.lo) return -1;
  if (a.lo > b.lo) return 1;
  return 0;
}

// Fractional part of a double-double, result in [0, 1).
inline dd dd_frac(dd a) {
  double f = std::floor(a.hi);
  dd r = dd_add(dd{a.hi - f, 0.0}, a.lo);
  if (r.hi >= 1.0) r = dd_add(r, -1.0);
  if (r.hi < 0.0) r = dd_add(r, 1.0);
  return r;
}

// sin(2*pi*(t + shift)*nu + pi/4) with the product t*nu formed by an
// error-free two-product split and reduced mod 1 before scaling by 2*pi.
// Naive evaluation loses ~8 digits of phase at t ~ 1e6, nu ~ 1e2.
inline double phase_sin(double t, double shift, double nu) {
  dd p = two_prod(t, nu);
  p = dd_add(p, shift * nu);
  dd f = dd_frac(p);
  // f in [0,1); shift to [-0.5, 0.5) so the sin argument stays small.
  double x = f.hi + f.lo;
  if (x >= 0.5) x -= 1.0;
  return std::sin(2.0 * M_PI * x + 0.25 * M_PI);
}

// Same reduction for cos(2*pi*t*nu + pi/4).
inline double phase_cos(double t, double nu) {
  dd p = two_prod(t, nu);
  dd f = dd_frac(p);
  double x = f.hi + f.lo;
  if (x >= 0.5) x -= 1.0;
  return std::cos(2.0 * M_PI * x + 0.25 * M_PI);
}

// ---------------------------------------------------------------------------
// Compensated (Kahan) accumulation.
// ---------------------------------------------------------------------------

struct KahanSum {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

// ---------------------------------------------------------------------------
// Deterministic counter-based RNG: one independent stream per sample index,
// derived from (seed, index) by splitmix64. Results do not depend on thread
// count or iteration order.
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream) {
    state_ = splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    state_ = splitmix64(state_ + stream);
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1], safe as a log argument.
  double next_open() { return ((next_u64() >> 11) + 1) * 0x1.0p-53; }

  // Standard normal via Box-Muller.
  double next_normal() {
    double u1 = next_open();
    double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

 private:
  std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// Deterministic parallel map: each index writes its own slot, reduction is
// done by the caller in fixed index order. Thread count comes from
// ANNULI_THREADS when set, else hardware concurrency.
// ---------------------------------------------------------------------------

int effective_thread_count();

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace annuli
