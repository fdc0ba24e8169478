#pragma once

// Random two-control / three-qubit configurations that satisfy the
// separability conditions used by the configure tests:
//  - optical lines at least 4 homogeneous widths apart,
//  - EPR lines at least EprModel::min_separation apart (sampled),
//  - every control couples to exactly two qubits with J in [2, 60] meV
//    (twice the 1 meV detection threshold or more) and not at all to the third.

#include "sfg/configure.hpp"

#include <random>

namespace support {

inline sfg::configure::ScanTruth random_truth(std::uint64_t seed, const sfg::configure::EprModel& epr = {}) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coupling(2.0, 60.0);
  std::uniform_real_distribution<double> gap(4.0, 40.0);
  std::uniform_int_distribution<int> left_out(0, 2);
  sfg::configure::ScanTruth t;
  t.homogeneous_width = 1.1;
  const double e1 = 450.0 + std::uniform_real_distribution<double>(-20.0, 20.0)(rng);
  t.controls = {{"C1", e1}, {"C2", e1 + gap(rng) * t.homogeneous_width}};
  const auto pos = sfg::configure::sample_epr_positions(3, epr, rng());
  t.qubits = {{"Q1", pos[0]}, {"Q2", pos[1]}, {"Q3", pos[2]}};
  t.couplings = Eigen::MatrixXd::Zero(2, 3);
  for (int c = 0; c < 2; ++c) {
    const int skip = left_out(rng);
    for (int q = 0; q < 3; ++q)
      if (q != skip) t.couplings(c, q) = coupling(rng);
  }
  return t;
}

inline std::map<std::string, std::vector<std::string>> truth_adjacency(const sfg::configure::ScanTruth& t,
                                                                       double threshold) {
  std::map<std::string, std::vector<std::string>> out;
  for (std::size_t c = 0; c < t.controls.size(); ++c)
    for (std::size_t q = 0; q < t.qubits.size(); ++q)
      if (std::abs(t.couplings(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(q))) >= threshold)
        out[t.controls[c].label].push_back(t.qubits[q].label);
  return out;
}

/// Exact match of labels, qubit sets, and no ambiguity flags.
inline bool recovered(const sfg::configure::AdjacencyHypothesis& h,
                      const std::map<std::string, std::vector<std::string>>& truth) {
  if (h.controls.size() != truth.size()) return false;
  for (const auto& c : h.controls) {
    const auto it = truth.find(c.label);
    if (it == truth.end() || c.ambiguous) return false;
    auto a = c.qubits;
    auto b = it->second;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return false;
  }
  return true;
}

}  // namespace support
