#include "doctest.h"

#include "sfg/error.hpp"
#include "sfg/lattice.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <set>

using namespace sfg::lattice;

namespace {

// Brute-force reference: the two FCC sublattices spelled out explicitly.
std::size_t brute_count(double a, double radius) {
  const double basis[8][3] = {{0, 0, 0},       {0, .5, .5},      {.5, 0, .5},      {.5, .5, 0},
                              {.25, .25, .25}, {.25, .75, .75}, {.75, .25, .75}, {.75, .75, .25}};
  const int m = static_cast<int>(std::ceil(radius / a)) + 1;
  std::size_t n = 0;
  for (int i = -m; i <= m; ++i)
    for (int j = -m; j <= m; ++j)
      for (int k = -m; k <= m; ++k)
        for (const auto& b : basis) {
          const double x = a * (i + b[0]), y = a * (j + b[1]), z = a * (k + b[2]);
          if (std::sqrt(x * x + y * y + z * z) <= radius + 1e-9) ++n;
        }
  return n;
}

}  // namespace

TEST_CASE("diamond site predicate matches the two FCC sublattices") {
  std::set<std::tuple<int, int, int>> expected;
  const int basis[8][3] = {{0, 0, 0}, {0, 2, 2}, {2, 0, 2}, {2, 2, 0}, {1, 1, 1}, {1, 3, 3}, {3, 1, 3}, {3, 3, 1}};
  for (int i = -2; i <= 2; ++i)
    for (int j = -2; j <= 2; ++j)
      for (int k = -2; k <= 2; ++k)
        for (const auto& b : basis) expected.insert({4 * i + b[0], 4 * j + b[1], 4 * k + b[2]});
  for (int x = -6; x <= 6; ++x)
    for (int y = -6; y <= 6; ++y)
      for (int z = -6; z <= 6; ++z)
        CHECK(is_diamond_site({x, y, z}) == expected.contains({x, y, z}));
}

TEST_CASE("enumeration agrees with a brute-force crystal build") {
  for (double r : {0.0, 1.0, 1.6, 2.6, 5.0, 7.3, 10.0}) {
    CAPTURE(r);
    CHECK(count_sites({3.567, r}) == brute_count(3.567, r));
  }
}

TEST_CASE("site counts at 10, 18, 25 angstrom") {
  CHECK(count_sites({3.567, 10.0}) == 729);
  CHECK(count_sites({3.567, 18.0}) == 4259);
  CHECK(count_sites({3.567, 25.0}) == 11543);
  CHECK(count_sites({3.567, 25.0}, false) == 11542);
  CHECK(enumerate_sites({3.567, 10.0}).size() == 729);
}

TEST_CASE("counts approach the continuum density") {
  const double r = 40.0;
  const double ratio = static_cast<double>(count_sites({3.567, r})) / continuum_site_estimate(r, 3.567);
  CHECK(ratio == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("first five shells hold 4, 12, 12, 6, 12 sites") {
  const auto table = shell_sizes({3.567, 4.0}, 5);
  const std::vector<std::size_t> sizes{4, 12, 12, 6, 12};
  const std::vector<std::int64_t> n2{3, 8, 11, 16, 19};
  REQUIRE(table.shells.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(table.shells[i].site_count == sizes[i]);
    CHECK(table.shells[i].squared_units == n2[i]);
  }
  CHECK(table.total_sites() == 46);
  CHECK(table.shells[0].radius == doctest::Approx(3.567 * std::sqrt(3.0) / 4.0));
  CHECK(shell_offsets(5).size() == 46);
}

TEST_CASE("shell offsets land on lattice sites from both sublattices") {
  for (const auto& o : shell_offsets(5)) {
    CHECK(is_diamond_site(o));
    CHECK(is_diamond_site({1 - o.x, 1 - o.y, 1 - o.z}));  // from the odd site (1,1,1) with negated offsets
  }
}

TEST_CASE("lattice errors") {
  CHECK_THROWS_AS(shell_sizes({3.567, 2.0}, 5), sfg::InsufficientRegionError);
  CHECK_THROWS_AS(count_sites({-1.0, 5.0}), sfg::InvalidSpecError);
  CHECK_THROWS_AS(count_sites({3.567, -5.0}), sfg::InvalidSpecError);
  CHECK_THROWS_AS(place_dopants({3.567, 5.0}, 0.0, {{"P", 1.0}}, 1), sfg::PreconditionError);
  CHECK_THROWS_AS(place_dopants({3.567, 5.0}, 0.1, {{"P", 0.7}}, 1), sfg::PreconditionError);
}

TEST_CASE("binomial neighbour law") {
  const auto p = binomial_distribution(46, 0.01);
  CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0));
  CHECK(p[0] == doctest::Approx(std::pow(0.99, 46)));
  CHECK(p[1] == doctest::Approx(46 * 0.01 * std::pow(0.99, 45)));
  CHECK(binomial_distribution(5, 0.0)[0] == 1.0);
  CHECK(binomial_distribution(5, 1.0)[5] == 1.0);
}

TEST_CASE("doping is reproducible under a seed and respects the mix") {
  const LatticeSpec spec{3.567, 40.0};
  const SpeciesMix mix{{"P", 0.25}, {"N", 0.75}};
  const auto a = place_dopants(spec, 0.05, mix, 7);
  const auto b = place_dopants(spec, 0.05, mix, 7);
  const auto c = place_dopants(spec, 0.05, mix, 8);
  REQUIRE(a.placements.size() == b.placements.size());
  for (std::size_t i = 0; i < a.placements.size(); ++i) {
    CHECK(a.placements[i].site.index == b.placements[i].site.index);
    CHECK(a.placements[i].species == b.placements[i].species);
  }
  CHECK(a.placements.size() != c.placements.size());
  const double n = static_cast<double>(a.placements.size());
  const double expected = 0.05 * static_cast<double>(a.site_count);
  CHECK(std::abs(n - expected) < 4.0 * std::sqrt(expected));
  const auto n_p = std::count_if(a.placements.begin(), a.placements.end(),
                                 [](const Placement& p) { return p.species == "P"; });
  CHECK(std::abs(static_cast<double>(n_p) - 0.25 * n) < 4.0 * std::sqrt(0.25 * 0.75 * n));
}

TEST_CASE("property: neighbour histogram follows the binomial law") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 3; ++trial) {
    const double c = std::uniform_real_distribution<double>(0.01, 0.05)(rng);
    const auto region = place_dopants({3.567, 70.0}, c, {{"X", 1.0}}, rng());
    const auto stats = neighbor_statistics(region, 5);
    CAPTURE(c);
    REQUIRE(stats.counted_dopants > 500);
    for (std::size_t k = 0; k < 3; ++k) {
      const double sigma = std::max(stats.sigma(k), 1e-3);
      CHECK(std::abs(stats.empirical[k] - stats.analytic[k]) < 4.0 * sigma);
    }
  }
}
