#include "doctest.h"

#include "support/random_scan.hpp"

#include "sfg/configure.hpp"
#include "sfg/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace sfg;
using namespace sfg::configure;

namespace {

ScanTruth table_like() {
  ScanTruth t;
  t.homogeneous_width = 1.1;
  t.controls = {{"C1", 424.3}, {"C2", 475.7}};
  t.qubits = {{"Q1", 0.0}, {"Q2", 0.8}, {"Q3", -0.9}};
  t.couplings = Eigen::MatrixXd::Zero(2, 3);
  t.couplings(0, 0) = 32.3;
  t.couplings(0, 1) = 10.5;
  t.couplings(1, 1) = 5.6;
  t.couplings(1, 2) = 41.2;
  t.couplings(0, 2) = 0.2;
  t.couplings(1, 0) = 0.01;
  return t;
}

}  // namespace

TEST_CASE("EPR positions are seeded and spaced") {
  EprModel m;
  const auto a = sample_epr_positions(4, m, 4);
  CHECK(a == sample_epr_positions(4, m, 4));
  auto s = a;
  std::sort(s.begin(), s.end());
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] - s[i - 1] >= m.min_separation);
  m.min_separation = 10.0;
  CHECK_THROWS_AS(sample_epr_positions(5, m, 1), PreconditionError);
}

TEST_CASE("EPR rows: unit-height lines and +-J/2 doublets") {
  ScanTruth t;
  t.homogeneous_width = 1.0;
  t.controls = {{"C", 100.0}};
  t.qubits = {{"Q", 0.0}};
  t.couplings = Eigen::MatrixXd::Constant(1, 1, 4.0);
  const std::vector<double> axis{-2.0, 0.0, 2.0};
  const auto off = epr_row(t, 50.0, axis, 0.05);
  CHECK(off[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(off[0] < 1e-3);
  const auto on = epr_row(t, 100.4, axis, 0.05);
  CHECK(on[0] == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(on[2] == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(on[1] < 1e-3);
  CHECK(epr_row(t, 100.6, axis, 0.05)[1] == doctest::Approx(1.0).epsilon(1e-12));  // outside delta_h / 2
}

TEST_CASE("property: rows are sums over qubits") {
  const auto t = support::random_truth(17);
  std::vector<double> axis;
  for (double x = -40.0; x <= 40.0; x += 0.01) axis.push_back(x);
  const double omega = t.controls[0].energy;
  const auto full = epr_row(t, omega, axis, 0.05);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(axis.size()));
  for (std::size_t q = 0; q < 3; ++q) {
    ScanTruth single = t;
    single.qubits = {t.qubits[q]};
    single.couplings = t.couplings.col(static_cast<Eigen::Index>(q));
    sum += epr_row(single, omega, axis, 0.05);
  }
  CHECK((full - sum).norm() < 1e-10);
}

TEST_CASE("scan layout") {
  const auto t = table_like();
  const auto scan = simulate_scan(t, EprModel{});
  CHECK(scan.ground_truth_hidden);
  REQUIRE(scan.optical_axis.size() >= 3);
  CHECK(std::is_sorted(scan.optical_axis.begin(), scan.optical_axis.end()));
  CHECK(std::adjacent_find(scan.optical_axis.begin(), scan.optical_axis.end()) == scan.optical_axis.end());
  CHECK(scan.optical_axis.front() < 424.3 - 2.0);
  CHECK(scan.response.rows() == static_cast<Eigen::Index>(scan.optical_axis.size()));
  CHECK(scan.response.cols() == static_cast<Eigen::Index>(scan.epr_axis.size()));
  std::ostringstream csv;
  write_csv(csv, scan);
  CHECK(csv.str().rfind("optical_meV", 0) == 0);
}

TEST_CASE("table-like scan recovers C1:{Q1,Q2}, C2:{Q2,Q3}") {
  const auto t = table_like();
  const auto h = infer_adjacency(simulate_scan(t, EprModel{}), 1.0);
  CHECK(support::recovered(h, support::truth_adjacency(t, 1.0)));
  const auto* c1 = h.find("C1");
  REQUIRE(c1 != nullptr);
  for (std::size_t k = 0; k < c1->qubits.size(); ++k) {
    const double truth = c1->qubits[k] == "Q1" ? 32.3 : 10.5;
    CHECK(c1->couplings[k] == doctest::Approx(truth).epsilon(0.02));
  }
}

TEST_CASE("property: random separable scenarios are recovered") {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const auto t = support::random_truth(seed);
    CAPTURE(seed);
    CHECK(support::recovered(infer_adjacency(simulate_scan(t, EprModel{}), 1.0), support::truth_adjacency(t, 1.0)));
  }
}

TEST_CASE("overlapping optical lines are flagged") {
  auto t = table_like();
  t.controls[1].energy = t.controls[0].energy + 0.5;  // inside one homogeneous width
  const auto h = infer_adjacency(simulate_scan(t, EprModel{}), 1.0);
  const bool any_ambiguous =
      std::any_of(h.controls.begin(), h.controls.end(), [](const ControlHypothesis& c) { return c.ambiguous; });
  CHECK(any_ambiguous);
  CHECK_FALSE(support::recovered(h, support::truth_adjacency(t, 1.0)));
}

TEST_CASE("empty scenarios") {
  ScanTruth t;
  t.couplings = Eigen::MatrixXd::Zero(0, 0);
  const auto scan = simulate_scan(t, EprModel{});
  CHECK(infer_adjacency(scan, 1.0).controls.empty());
  CHECK_THROWS_AS(infer_adjacency(scan, 0.0), PreconditionError);
  auto bad = table_like();
  bad.couplings = Eigen::MatrixXd::Zero(3, 3);
  CHECK_THROWS_AS(simulate_scan(bad, EprModel{}), DependencyError);
}

TEST_CASE("calibration from the inferred couplings") {
  ScanTruth t;
  t.homogeneous_width = 1.1;
  t.controls = {{"C1", 450.0}};
  t.qubits = {{"Q1", 0.0}, {"Q2", 0.9}};
  t.couplings = Eigen::MatrixXd(1, 2);
  t.couplings << 30.0, 30.0;
  const auto h = infer_adjacency(simulate_scan(t, EprModel{}), 1.0);
  const auto report = calibrate_gate_time(t, h, "C1");
  REQUIRE(report.fidelity_to_target.has_value());
  CHECK(*report.fidelity_to_target > 0.99);
  CHECK(report.control_residual_entanglement < 1e-3);

  const auto tt = table_like();
  const auto ht = infer_adjacency(simulate_scan(tt, EprModel{}), 1.0);
  CHECK_THROWS_AS(calibrate_gate_time(tt, ht, "C9"), PreconditionError);
  // Asymmetric couplings: no clean gate exists to calibrate against.
  CHECK_THROWS_AS(calibrate_gate_time(tt, ht, "C1"), spins::NoCleanGateError);
}
