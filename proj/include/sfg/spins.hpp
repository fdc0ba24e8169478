#pragma once

#include "sfg/error.hpp"

#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sfg::spins {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Matrix4 = Eigen::Matrix4cd;

inline constexpr int kMaxSpins = 14;

enum class SpinRole { qubit, control };

struct Spin {
  std::string label;
  SpinRole role = SpinRole::qubit;
};

/// Spin-1/2 cluster. Basis index bit (n-1-i) holds spin i, 0 = up, so spin 0
/// is the most significant (leftmost) tensor factor.
struct SpinSystem {
  std::vector<Spin> spins;
  std::map<std::pair<int, int>, double> couplings;  // (i < j) -> J_ij, meV
  std::vector<double> zeeman;                       // Delta_i, meV; empty = all zero

  int size() const { return static_cast<int>(spins.size()); }
  std::size_t dimension() const { return std::size_t{1} << spins.size(); }
  int add_spin(std::string label, SpinRole role);
  void set_coupling(int i, int j, double value);
  double coupling(int i, int j) const;
  double zeeman_of(int i) const;
};

/// Throws SizeError above kMaxSpins and PreconditionError on bad indices or
/// non-finite couplings.
void validate(const SpinSystem& system);

/// H = sum_{i<j} J_ij S_i.S_j + sum_i Delta_i S_i^z (real symmetric).
Eigen::MatrixXd build_hamiltonian(const SpinSystem& system);

/// Total S^z as a diagonal matrix.
Eigen::MatrixXd total_sz(int n_spins);

/// exp(-i H t / hbar) through one eigendecomposition of H; t in ps.
class Propagator {
 public:
  explicit Propagator(const Eigen::MatrixXd& hamiltonian);

  Matrix unitary(double t_ps) const;
  Vector evolve(const Vector& state, double t_ps) const;
  const Eigen::VectorXd& energies() const { return energies_; }

 private:
  Eigen::VectorXd energies_;
  Eigen::MatrixXd vectors_;
};

Vector evolve(const Vector& state, const Eigen::MatrixXd& hamiltonian, double t_ps);

/// Second-order qubit-qubit coupling J1 J2 / dE scale estimate, meV.
double effective_coupling(double j1, double j2, double excitation_energy);

// --- entanglement ----------------------------------------------------------

/// |2 (a00 a11 - a01 a10)| of a normalized two-qubit state.
double concurrence(const Vector& state);

/// Von Neumann entropy (bits) of the first `left_qubits` qubits of a pure state.
double entanglement_entropy(const Vector& state, int left_qubits);

/// Operator-Schmidt entropy (bits) of U across (dim_a | dim_b), the first
/// factor being the leading one. Zero iff U = A (x) B.
double operator_entanglement(const Matrix& u, int dim_a, int dim_b);

/// Product-state averaged linear entropy generated by a two-qubit unitary,
/// closed form (4/9)[E(U) + E(U SWAP) - E(SWAP)]. Range [0, 2/9].
double entangling_power(const Matrix4& u);

/// Same average by sampling Haar-random product inputs.
double entangling_power_monte_carlo(const Matrix4& u, std::size_t samples, std::uint64_t seed);

struct EntanglementMetrics {
  double concurrence = 0.0;
  double entropy = 0.0;  // bits
  std::optional<double> entangling_power;
};

EntanglementMetrics entanglement_metrics(const Vector& state);

/// For a unitary: the largest output concurrence/entropy over the product
/// inputs built from {|0>, |1>, |+>, |+i>} on each qubit, plus entangling power.
EntanglementMetrics entanglement_metrics(const Matrix4& u);

/// Phase-insensitive average gate fidelity (|Tr A^dag B|^2 / d + 1) / (d + 1).
double gate_fidelity(const Matrix& a, const Matrix& b);

/// Hilbert-space factorization of U = V_c (x) W_q with the control as the
/// leading factor: returns W scaled to be unitary when the residual is ~0.
Matrix factor_qubit_unitary(const Matrix& u, int dim_control, int dim_qubits);

/// Reorders tensor factors so spin `first` leads, keeping the others in order.
Matrix move_spin_first(const Matrix& u, int n_spins, int first);

// --- SFG gate ----------------------------------------------------------------

struct GateSearch {
  /// Scan [tau_min, tau_max] ps; tau_max <= 0 selects 8 pi hbar / max J.
  double tau_min = 0.0;
  double tau_max = 0.0;
  /// Scan step as a fraction of pi hbar / max J.
  double resolution = 1e-3;
  /// Control residual entanglement (bits) below which a gate is clean.
  double residual_threshold = 1e-6;
  /// Optional target for fidelity_to_target.
  std::optional<Matrix4> target;
};

struct GateReport {
  int control = -1;
  std::vector<int> qubits;
  double duration = 0.0;  // ps
  Matrix4 qubit_unitary = Matrix4::Identity();
  double control_residual_entanglement = 0.0;  // bits
  double entangling_power = 0.0;
  std::optional<double> fidelity_to_target;
};

class NoCleanGateError : public Error {
 public:
  NoCleanGateError(const std::string& what, GateReport best)
      : Error("spins", what), best_(std::move(best)) {}
  const GateReport& best() const noexcept { return best_; }

 private:
  GateReport best_;
};

/// Unitary of the control + two qubit cluster after the control has been
/// excited for tau ps (couplings switched on instantaneously).
GateReport evaluate_gate(const SpinSystem& system, int control, double tau_ps,
                         const std::optional<Matrix4>& target = std::nullopt);

/// Scans tau for a control-disentangling gate with the largest entangling
/// power (earliest on ties). Throws NoCleanGateError carrying the lowest
/// residual candidate when none is clean.
GateReport sfg_gate(const SpinSystem& system, int control, const GateSearch& search = {});

/// 4 pi hbar / (3 J): first clean entangling time of a symmetric J-J star.
double symmetric_gate_time(double j);

}  // namespace sfg::spins
