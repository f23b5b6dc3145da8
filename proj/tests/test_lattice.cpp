#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "counting.hpp"
#include "lattice.hpp"

using namespace annuli;

namespace {

// Independent O(t^2) oracle: closed-ball count by scanning the full box.
std::int64_t brute_count(double alpha, double t) {
  double g = alpha * alpha;
  std::int64_t count = 0;
  auto n_max = static_cast<std::int64_t>(t) + 2;
  auto m_max = static_cast<std::int64_t>(t / alpha) + 2;
  for (std::int64_t n = -n_max; n <= n_max; ++n)
    for (std::int64_t m = -m_max; m <= m_max; ++m)
      if (static_cast<double>(n) * n + static_cast<double>(m) * m * g <= t * t)
        ++count;
  return count;
}

}  // namespace

TEST_CASE("count_sharp matches brute-force box enumeration") {
  // 100 random (alpha, t); radii kept moderate so the oracle stays O(t^2).
  Rng rng(20240817, 0);
  for (int i = 0; i < 100; ++i) {
    double alpha = 0.3 + 2.7 * rng.next_double();
    double t = 1.0 + 199.0 * rng.next_double();
    CAPTURE(alpha);
    CAPTURE(t);
    CHECK(count_sharp(EllipseLattice(alpha), t) == brute_count(alpha, t));
  }
}

TEST_CASE("count_sharp known small values") {
  EllipseLattice sq(1.0);
  CHECK(count_sharp(sq, 0.0) == 1);
  CHECK(count_sharp(sq, 1.0) == 5);
  CHECK(count_sharp(sq, 5.0) == 81);  // Gauss circle, radius 5
  // boundary exactness: radius an exact norm must include the circle points
  CHECK(count_sharp(sq, std::sqrt(2.0)) == 9);
}

TEST_CASE("squared_norm and multiplicity") {
  EllipseLattice lat(2.0);
  CHECK(squared_norm(3, 2, lat, Side::primal) == doctest::Approx(9.0 + 4.0 * 4.0));
  CHECK(squared_norm(3, 2, lat, Side::dual) == doctest::Approx(9.0 + 4.0 * 0.25));
  CHECK(multiplicity_r(0, 0) == 1);
  CHECK(multiplicity_r(3, 0) == 2);
  CHECK(multiplicity_r(0, 7) == 2);
  CHECK(multiplicity_r(1, 1) == 4);
}

TEST_CASE("enumerate_vectors: full vs quadrant-primitive") {
  EllipseLattice lat(std::sqrt(2.0));
  auto all = enumerate_vectors(lat, Side::dual, 10.0);
  // every vector within radius, none outside
  for (const LatticeVector& v : all) CHECK(v.squared_norm <= 100.0 + 1e-9);
  // count cross-check against the sharp counter on the dual lattice
  EllipseLattice dual_as_primal(1.0 / lat.alpha);
  CHECK(static_cast<std::int64_t>(all.size()) == count_sharp(dual_as_primal, 10.0));

  auto prim = enumerate_vectors(lat, Side::dual, 10.0, /*quadrant_primitive=*/true);
  std::set<std::pair<int, int>> seen;
  for (const LatticeVector& v : prim) {
    CHECK(v.n >= 0);
    CHECK(v.m >= 0);
    CHECK(std::gcd(v.n, v.m) == 1);
    CHECK(seen.insert({v.n, v.m}).second);  // no duplicates
  }
  // reconstruction: each vector is uniquely f * primitive-direction copy
  std::int64_t rebuilt = 1;  // origin
  for (const LatticeVector& v : prim) {
    double nu = std::sqrt(v.squared_norm);
    rebuilt += multiplicity_r(v.n, v.m) * static_cast<std::int64_t>(10.0 / nu);
  }
  CHECK(rebuilt == static_cast<std::int64_t>(all.size()));
}

TEST_CASE("spectrum: multiplicity law for irrational gamma") {
  // gamma = sqrt(2) and e^2 admit no cross-representation collisions
  for (double alpha : {std::pow(2.0, 0.25), std::exp(1.0)}) {
    SpectrumTable spec(EllipseLattice(alpha), Side::primal, 1e4);
    for (const SpectrumEntry& e : spec.entries()) {
      if (e.squared_norm <= 0.0) continue;
      CAPTURE(alpha);
      CAPTURE(e.squared_norm);
      CHECK(e.multiplicity == multiplicity_r(e.n, e.m));
    }
  }
}

TEST_CASE("spectrum: exact-norm merging on the square lattice") {
  SpectrumTable spec(EllipseLattice(1.0), Side::primal, 100.0);
  auto mult_at = [&](double q) {
    for (const SpectrumEntry& e : spec.entries())
      if (e.squared_norm == q) return e.multiplicity;
    return 0;
  };
  CHECK(mult_at(0.0) == 1);
  CHECK(mult_at(1.0) == 4);
  CHECK(mult_at(25.0) == 12);  // (5,0), (3,4), (4,3) sign classes
  CHECK(mult_at(50.0) == 12);  // (5,5), (1,7), (7,1)
  CHECK(mult_at(3.0) == 0);    // not a sum of two squares
}

TEST_CASE("spectrum: entries sorted, min_gap and delta_at") {
  EllipseLattice lat(std::sqrt(2.0));
  SpectrumTable spec(lat, Side::dual, 50.0);
  const auto& es = spec.entries();
  REQUIRE(es.size() > 5);
  double min_gap = 1e300;
  for (std::size_t i = 1; i < es.size(); ++i) {
    // ascending; norms that are distinct in double-double may still collide
    // once rounded to double, so equality is allowed
    CHECK(es[i].squared_norm >= es[i - 1].squared_norm);
    min_gap = std::min(min_gap, es[i].squared_norm - es[i - 1].squared_norm);
  }
  CHECK(spec.min_gap() == doctest::Approx(min_gap));

  // delta_at returns the gap neighborhood of the nearest norm
  double q1 = es[3].squared_norm, q2 = es[4].squared_norm;
  double just_below_mid = q1 + 0.49 * (q2 - q1);
  CHECK(spec.nearest_index(just_below_mid) == 3);
  // exact midpoint resolves to the smaller norm
  CHECK(spec.nearest_index(0.5 * (q1 + q2)) == 3);
  CHECK(spec.delta_at(just_below_mid) > 0.0);
}

TEST_CASE("pair_near_count against a brute-force sweep") {
  EllipseLattice lat(std::sqrt(2.0));
  double R = 20.0, delta = 0.5;
  // oracle: all ordered vector pairs with R <= |k|^2 <= 2R and
  // |k|^2 <= |l|^2 <= |k|^2 + delta
  auto vec = enumerate_vectors(lat, Side::primal, std::sqrt(2.0 * R + delta) + 1.0);
  std::int64_t expect = 0;
  for (const auto& a : vec) {
    if (a.squared_norm < R || a.squared_norm > 2.0 * R) continue;
    for (const auto& b : vec)
      if (b.squared_norm >= a.squared_norm &&
          b.squared_norm <= a.squared_norm + delta)
        ++expect;
  }
  CHECK(pair_near_count(lat, R, delta) == expect);
}

TEST_CASE("vector budget is enforced") {
  CHECK_THROWS_AS(enumerate_vectors(EllipseLattice(1.0), Side::primal, 1e6,
                                    false, /*budget=*/1000),
                  budget_error);
}
