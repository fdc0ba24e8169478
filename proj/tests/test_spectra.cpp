#include "doctest.h"

#include "sfg/error.hpp"
#include "sfg/spectra.hpp"
#include "sfg/units.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace sfg;
using namespace sfg::spectra;

TEST_CASE("greedy resolvable count") {
  CHECK_THROWS_AS(resolvable_gate_count(std::vector<double>{}, 1.0, 1.5), PreconditionError);
  CHECK(resolvable_gate_count(std::vector<double>{3.0, 0.0, 1.4, 1.0}, 1.0, 1.5) == 2);
  CHECK(resolvable_gate_count(std::vector<double>{0.0, 1.5, 3.0}, 1.0, 1.5) == 3);  // boundary kept
  CHECK(resolvable_gate_count(std::vector<double>(5, 2.0), 1.0, 1.5) == 1);
}

TEST_CASE("property: count is order-independent and falls with k") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0.0, 6.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> e(20);
    for (auto& v : e) v = n(rng);
    const int base = resolvable_gate_count(e, 1.0, 1.5);
    std::shuffle(e.begin(), e.end(), rng);
    CHECK(resolvable_gate_count(e, 1.0, 1.5) == base);
    CHECK(resolvable_gate_count(e, 1.0, 3.0) <= base);
    CHECK(base >= 1);
    CHECK(base <= 20);
  }
}

TEST_CASE("transition lines") {
  SpectralModel m;
  m.base_transition_energy = 450.0;
  m.homogeneous_width = 1.1;
  const std::vector<ControlSite> one{{"C1", Eigen::Vector3d::Zero()}};
  const auto lines = gate_transitions(one, m, {}, 1);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].energy == 450.0);
  CHECK(lines[0].width == 1.1);

  const std::vector<ControlSite> three{{"A", {0, 0, 0}}, {"B", {10, 0, 0}}, {"C", {0, 20, 0}}};
  CHECK_THROWS_AS(gate_transitions(three, m, {}, 1), DependencyError);
  const auto shifted = gate_transitions(three, m, [](double r) { return -100.0 / r; }, 1);
  double sum = 0.0;
  for (const auto& l : shifted) sum += l.energy - 450.0;
  CHECK(sum == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(shifted[0].energy == doctest::Approx(450.0 - 10.0 - 5.0));
  CHECK(shifted[2].energy == doctest::Approx(450.0 + 5.0 + 100.0 / std::sqrt(500.0)));
}

TEST_CASE("disorder draws are Gaussian with sigma = FWHM / 2.355 and seeded") {
  SpectralModel m;
  m.homogeneous_width = 1.0;
  m.disorder = {{"strain", 12.0}, {"field", 5.0}};
  CHECK(m.inhomogeneous_width() == doctest::Approx(13.0));
  std::vector<ControlSite> sites;
  for (int i = 0; i < 20000; ++i) sites.push_back({"C" + std::to_string(i), Eigen::Vector3d(1000.0 * i, 0, 0)});
  const auto none = [](double) { return 0.0; };
  const auto a = gate_transitions(sites, m, none, 3);
  const auto b = gate_transitions(sites, m, none, 3);
  double mean = 0.0, var = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].energy == b[i].energy);
    mean += a[i].energy;
  }
  mean /= a.size();
  for (const auto& l : a) var += (l.energy - mean) * (l.energy - mean);
  const double sigma = std::sqrt(var / a.size());
  CHECK(sigma == doctest::Approx(13.0 / units::kFwhmPerSigma).epsilon(0.02));
  CHECK(mean == doctest::Approx(450.0).epsilon(1e-3));
}

TEST_CASE("spectral model validation") {
  SpectralModel m;
  m.homogeneous_width = 0.0;
  CHECK_THROWS_AS(validate(m), PreconditionError);
  m.homogeneous_width = 1.0;
  m.disorder = {{"x", -1.0}};
  CHECK_THROWS_AS(validate(m), PreconditionError);
  CHECK_THROWS_AS(mean_resolvable_count(0, 1.0, 14.0, 1.5, 10, 1), PreconditionError);
}

TEST_CASE("mean resolvable count is seeded and grows with the width ratio") {
  const double a = mean_resolvable_count(20, 1.0, 14.0, 1.5, 500, 9);
  CHECK(a == mean_resolvable_count(20, 1.0, 14.0, 1.5, 500, 9));
  CHECK(mean_resolvable_count(20, 1.0, 30.0, 1.5, 500, 9) > a);
  CHECK(mean_resolvable_count(20, 1.0, 3.0, 1.5, 500, 9) < a);
}

TEST_CASE("transfer table follows its curve") {
  std::vector<integrals::TransitionPair> curve;
  for (double r = 5.0; r <= 30.0; r += 1.0) {
    const double t = -80.0 * std::exp(-r / 10.0);
    curve.push_back({r, 450.0 + t, 450.0 - t, t});
  }
  const TransferTable t(curve);
  CHECK(std::abs(t(12.5)) == doctest::Approx(80.0 * std::exp(-1.25)));
}
