#include "doctest.h"

#include "oracle/hl_quadrature.hpp"

#include "sfg/donor.hpp"
#include "sfg/error.hpp"
#include "sfg/gaussian.hpp"
#include "sfg/integrals.hpp"

#include <cmath>
#include <limits>

using namespace sfg;
using namespace sfg::integrals;

namespace {

donor::DonorModel species(double binding, double ccs, double scale, donor::Role role) {
  auto m = donor::model_from_ionization(binding, 5.7, ccs);
  m.species_name = "test";
  m.role = role;
  m.radius_scale_factor = scale;
  return m;
}

const auto kControl = species(0.6, 0.0, 1.0, donor::Role::control);
const auto kQubit = species(0.6, 0.0, 0.5, donor::Role::qubit);

double excited_j(const donor::DonorModel& c, const donor::DonorModel& q, double r, int terms = 6) {
  return exchange_curve(c, q, true, {r}, {terms}).front().exchange_splitting;
}
double ground_j(const donor::DonorModel& c, const donor::DonorModel& q, double r) {
  return exchange_curve(c, q, false, {r}).front().exchange_splitting;
}

}  // namespace

TEST_CASE("oracle reproduces closed forms for 1s-1s") {
  // Unit radius: S = e^-R (1 + R + R^2/3), (AA|BB) = 1/R - e^-2R (1/R + 11/8 + 3R/4 + R^2/6)
  const double r = 2.0;
  const oracle::Orbital a{oracle::Kind::s1, 1.0, -r / 2.0, 1.0};
  const oracle::Orbital b{oracle::Kind::s1, 1.0, r / 2.0, -1.0};
  const auto o = oracle::one_electron(a, b, r);
  CHECK(o.s == doctest::Approx(std::exp(-r) * (1.0 + r + r * r / 3.0)).epsilon(1e-8));
  CHECK(o.aa_rb == doctest::Approx(1.0 / r - std::exp(-2.0 * r) * (1.0 + 1.0 / r)).epsilon(1e-8));
  CHECK(-0.5 * o.lap_aa == doctest::Approx(0.5).epsilon(1e-8));
  auto da = [&](double rho, double z) { const double v = a.value(rho, z); return v * v; };
  auto db = [&](double rho, double z) { const double v = b.value(rho, z); return v * v; };
  const double ref = 1.0 / r - std::exp(-2.0 * r) * (1.0 / r + 11.0 / 8.0 + 3.0 * r / 4.0 + r * r / 6.0);
  CHECK(oracle::coulomb(da, db, r, 40.0, 40, 400, 96) == doctest::Approx(ref).epsilon(2e-4));
}

TEST_CASE("Slater fit converges and stays normalized") {
  for (auto kind : {OrbitalKind::s1, OrbitalKind::p2}) {
    double previous = std::numeric_limits<double>::infinity();
    for (int n = 3; n <= 7; ++n) {
      const auto fit = fit_gaussian_expansion({kind, 1.0}, n);
      CAPTURE(n);
      CHECK(fit.fit_error < previous);
      previous = fit.fit_error;
      const auto g = fit.contracted();
      CHECK(gaussian::overlap(g, g) == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK(previous < 0.01);
  }
  CHECK_THROWS_AS(fit_gaussian_expansion({OrbitalKind::s1, 1.0}, 2), PreconditionError);
}

TEST_CASE("fits scale with the orbital radius") {
  const auto unit = fit_gaussian_expansion({OrbitalKind::s1, 1.0}, 5);
  const auto big = fit_gaussian_expansion({OrbitalKind::s1, 2.5}, 5);
  REQUIRE(unit.terms.size() == big.terms.size());
  for (std::size_t i = 0; i < unit.terms.size(); ++i) {
    CHECK(big.terms[i].exponent == doctest::Approx(unit.terms[i].exponent / (2.5 * 2.5)));
    CHECK(big.terms[i].coefficient == doctest::Approx(unit.terms[i].coefficient));
  }
}

TEST_CASE("1s-1s overlap against the closed form") {
  for (double r : {1.0, 3.0, 6.0}) {
    const OrbitalSpec a{OrbitalKind::s1, 1.0};
    const OrbitalSpec b{OrbitalKind::s1, 1.0, Eigen::Vector3d(0, 0, r)};
    const auto raw = raw_integrals(a, b, {8, false});
    CHECK(raw.s == doctest::Approx(std::exp(-r) * (1.0 + r + r * r / 3.0)).epsilon(2e-3));
  }
}

// Frozen oracle values (exact orbitals, quadrature, explicit kinetic energy).
// P-P: 0.6 eV, eps 5.7, both at a*. P-N: qubit at a*/2.
TEST_CASE("exchange against the quadrature oracle") {
  struct Row {
    double r, ground, excited;
  };
  for (const auto& row : {Row{6.0, 114.51732, 111.02833}, Row{10.0, 7.8105581, 97.545009},
                          Row{14.0, 0.36693335, 39.788098}}) {
    CAPTURE(row.r);
    CHECK(ground_j(kControl, kControl, row.r) == doctest::Approx(row.ground).epsilon(0.015));
    CHECK(excited_j(kControl, kControl, row.r) == doctest::Approx(row.excited).epsilon(0.015));
  }
  for (const auto& row : {Row{9.0, 7.6725704, 158.3467}, Row{10.0623059, 3.0194554, 125.74687},
                          Row{16.0, 0.01369034, 22.485606}}) {
    CAPTURE(row.r);
    CHECK(ground_j(kControl, kQubit, row.r) == doctest::Approx(row.ground).epsilon(0.015));
    CHECK(excited_j(kControl, kQubit, row.r) == doctest::Approx(row.excited).epsilon(0.015));
  }
}

TEST_CASE("transfer against the quadrature oracle") {
  const auto curve = transfer_splitting_curve(kControl, {8.0, 15.0, 25.0});
  const double ref[] = {59.935537, 39.457901, 23.277405};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(curve[i].transfer) == doctest::Approx(ref[i]).epsilon(0.015));
    CHECK(curve[i].splitting() == doctest::Approx(2.0 * std::abs(curve[i].transfer)));
    CHECK(curve[i].lower + curve[i].upper == doctest::Approx(2.0 * base_transition_energy(kControl)));
  }
  CHECK(base_transition_energy(kControl) == doctest::Approx(450.0));
}

TEST_CASE("effective charges") {
  const Medium m{5.7, kControl.effective_bohr_radius};
  CHECK(effective_charge(kControl.effective_bohr_radius, 600.0, m) == doctest::Approx(1.0));
  CHECK(effective_charge(kControl.effective_bohr_radius / 2.0, 600.0, m) == doctest::Approx(1.25));
}

TEST_CASE("property: exchange depends only on the separation") {
  const Eigen::Vector3d dirs[] = {Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(1, 1, 1).normalized(),
                                  Eigen::Vector3d(-0.2, 0.9, 0.4).normalized()};
  for (bool excited : {false, true}) {
    double ref = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      const auto s = control_qubit_setup(kControl, kQubit, excited, 11.0 * dirs[i]);
      const double j = pair_integrals(s.control, s.qubit, s.medium, s.charges).exchange_splitting;
      if (i == 0)
        ref = j;
      else
        CHECK(j == doctest::Approx(ref).epsilon(1e-9));
    }
  }
}

TEST_CASE("property: s-s pair integrals are symmetric in the two centres") {
  const Medium m{5.7, 2.1};
  const OrbitalSpec a{OrbitalKind::s1, 2.1};
  const OrbitalSpec b{OrbitalKind::s1, 1.05, Eigen::Vector3d(3.0, 4.0, 0.0)};
  const auto ab = pair_integrals(a, b, m, {1.0, 1.25});
  auto b0 = b;
  b0.center.setZero();
  auto a0 = a;
  a0.center = -b.center;
  const auto ba = pair_integrals(b0, a0, m, {1.25, 1.0});
  CHECK(ab.exchange_splitting == doctest::Approx(ba.exchange_splitting).epsilon(1e-10));
  CHECK(ab.transfer == doctest::Approx(ba.transfer).epsilon(1e-10));
  CHECK(ab.overlap == doctest::Approx(ba.overlap).epsilon(1e-12));
}

TEST_CASE("fixed axis perpendicular to the pair kills the sigma overlap") {
  CurveOptions opts;
  opts.axis_mode = AxisMode::fixed;
  opts.fixed_axis = Eigen::Vector3d::UnitZ();
  const auto s = control_qubit_setup(kControl, kQubit, true, Eigen::Vector3d(10.0, 0, 0), opts);
  const auto res = pair_integrals(s.control, s.qubit, s.medium, s.charges);
  CHECK(std::abs(res.overlap) < 1e-10);
}

TEST_CASE("more Gaussians move J by little") {
  const double j6 = excited_j(kControl, kQubit, 15.0, 6);
  const double j8 = excited_j(kControl, kQubit, 15.0, 8);
  CHECK(j8 == doctest::Approx(j6).epsilon(0.01));
}

TEST_CASE("integral errors") {
  const Medium m{5.7, 2.1};
  const OrbitalSpec a{OrbitalKind::s1, 2.1};
  CHECK_THROWS_AS(raw_integrals(a, a), PreconditionError);
  const OrbitalSpec near{OrbitalKind::s1, 2.1, Eigen::Vector3d(0, 0, 1e-3)};
  CHECK_THROWS_AS(pair_integrals(a, near, m, {}), IllConditionedGeometryError);
  CHECK_THROWS_AS(exchange_curve(kControl, kQubit, true, {5.0, 4.0}), PreconditionError);
  CHECK_THROWS_AS(exchange_curve(kControl, kQubit, true, {-1.0}), PreconditionError);
}

TEST_CASE("crossover radius on synthetic curves") {
  std::vector<PairIntegralResult> g, e;
  for (double r = 2.0; r <= 20.0; r += 1.0) {
    PairIntegralResult pg, pe;
    pg.separation = pe.separation = r;
    pg.exchange_splitting = std::exp(-r);
    pe.exchange_splitting = std::exp(-0.5 * r - 3.0);  // equal at r = 6
    g.push_back(pg);
    e.push_back(pe);
  }
  CHECK(crossover_radius(g, e, 1.0) == doctest::Approx(6.0));
  CHECK(crossover_radius(g, e, std::exp(1.0)) == doctest::Approx(8.0));
  CHECK(std::isnan(crossover_radius(g, e, std::exp(20.0))));
}

TEST_CASE("exchange table interpolates exponentials exactly") {
  std::vector<double> r, j;
  for (double x = 2.0; x <= 10.0; x += 2.0) {
    r.push_back(x);
    j.push_back(5.0 * std::exp(-0.7 * x));
  }
  const ExchangeTable t(r, j);
  for (double x : {1.0, 2.0, 3.3, 9.9, 14.0}) CHECK(t(x) == doctest::Approx(5.0 * std::exp(-0.7 * x)));
  CHECK_THROWS_AS(ExchangeTable({1.0}, {1.0}), PreconditionError);
  CHECK_THROWS_AS(ExchangeTable({2.0, 1.0}, {1.0, 1.0}), PreconditionError);
}
