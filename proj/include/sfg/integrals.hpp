#pragma once

#include "sfg/donor.hpp"
#include "sfg/gaussian.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace sfg::integrals {

enum class OrbitalKind { s1, p2 };

std::string to_string(OrbitalKind kind);

/// Hydrogenic orbital. s1: (pi a^3)^(-1/2) exp(-r/a).
/// p2: (4 sqrt(2 pi))^-1 a^(-5/2) (r.axis) exp(-r/2a).
struct OrbitalSpec {
  OrbitalKind kind = OrbitalKind::s1;
  double bohr_radius = 1.0;  // angstrom
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
};

struct GaussianTerm {
  double exponent = 0.0;     // 1/angstrom^2
  double coefficient = 0.0;  // weight of the normalized primitive
};

struct GaussianExpansion {
  std::vector<GaussianTerm> terms;
  OrbitalSpec target;
  /// RMS of (fit - f) e^x over the canonical window x in [0, window]; the
  /// relative deviation for s1, x times it for p2.
  double fit_error = 0.0;

  gaussian::Contracted contracted() const;
};

struct FitOptions {
  /// Fit window in decay lengths (x = r/a for s1, r/2a for p2).
  double window = 16.0;
  int quadrature_points = 400;
  /// fit_error above this raises FitFailureError.
  double tolerance = 0.5;
};

GaussianExpansion fit_gaussian_expansion(const OrbitalSpec& orbital, int n_terms, const FitOptions& options = {});

/// Screening medium shared by both centres. host_bohr_radius sets the kinetic
/// energy scale hbar^2/2m* = (e^2/eps) host_bohr_radius / 2.
struct Medium {
  double dielectric_constant = 5.7;
  double host_bohr_radius = 1.0;  // angstrom

  /// e^2/eps in meV*angstrom.
  double coulomb_scale() const;
};

struct EffectiveCharges {
  double a = 1.0;
  double b = 1.0;
};

/// Charge Z for which <h> of a hydrogenic orbital of radius `orbital_radius`
/// equals -(binding) of that level: Z = a_host/(2a) + R_c a eps/e^2, with
/// `coulombic_binding_mev` the ground-level binding of the species.
double effective_charge(double orbital_radius, double coulombic_binding_mev, const Medium& medium);

struct PairOptions {
  int gaussian_terms = 6;
  /// When false the two-electron integrals (and everything built on them) are NaN.
  bool two_electron = true;
};

struct PairIntegralResult {
  double separation = 0.0;          // angstrom
  double overlap = 0.0;             // S
  double transfer = 0.0;            // t, meV (Loewdin hopping between the two orbitals)
  double coulomb = 0.0;             // (AA|BB) e^2/eps, meV
  double exchange_integral = 0.0;   // (AB|AB) e^2/eps, meV
  double exchange_splitting = 0.0;  // E(triplet) - E(singlet), meV
  OrbitalKind kind_a = OrbitalKind::s1;
  OrbitalKind kind_b = OrbitalKind::s1;
  double radius_a = 0.0;
  double radius_b = 0.0;
};

/// Raw one- and two-electron integrals in atomic-like units (1/angstrom).
struct RawIntegrals {
  double s = 0.0;
  double a_rb_a = 0.0;  // <A|1/r_B|A>
  double b_ra_b = 0.0;  // <B|1/r_A|B>
  double a_ra_b = 0.0;  // <A|1/r_A|B>
  double a_rb_b = 0.0;  // <A|1/r_B|B>
  double aa_bb = 0.0;   // (AA|BB)
  double ab_ab = 0.0;   // (AB|AB)
};

RawIntegrals raw_integrals(const OrbitalSpec& a, const OrbitalSpec& b, const PairOptions& options = {});

/// Heitler-London assembly on top of raw integrals.
PairIntegralResult assemble(const OrbitalSpec& a, const OrbitalSpec& b, const RawIntegrals& raw,
                            const Medium& medium, const EffectiveCharges& charges);

PairIntegralResult pair_integrals(const OrbitalSpec& a, const OrbitalSpec& b, const Medium& medium,
                                  const EffectiveCharges& charges, const PairOptions& options = {});

enum class AxisMode { inter_center, fixed };

struct CurveOptions {
  int gaussian_terms = 6;
  AxisMode axis_mode = AxisMode::inter_center;
  Eigen::Vector3d fixed_axis = Eigen::Vector3d::UnitZ();
};

/// Orbitals, medium and charges for a control (1s or 2p) / qubit (1s) pair
/// with the qubit displaced by `offset` from the control.
struct PairSetup {
  OrbitalSpec control;
  OrbitalSpec qubit;
  Medium medium;
  EffectiveCharges charges;
};

PairSetup control_qubit_setup(const donor::DonorModel& control, const donor::DonorModel& qubit, bool excited,
                              const Eigen::Vector3d& offset, const CurveOptions& options = {});

std::vector<PairIntegralResult> exchange_curve(const donor::DonorModel& control, const donor::DonorModel& qubit,
                                               bool excited, const std::vector<double>& r_grid,
                                               const CurveOptions& options = {});

struct TransitionPair {
  double separation = 0.0;  // angstrom
  double lower = 0.0;       // meV
  double upper = 0.0;       // meV
  double transfer = 0.0;    // t between the excited orbitals, meV
  double splitting() const { return upper - lower; }
};

/// 1s->2p transition energy of the isolated control (3/4 of its Coulombic binding), meV.
double base_transition_energy(const donor::DonorModel& control);

/// Bonding/antibonding branches base -/+ |t| of the 2p-2p pair of two identical controls.
std::vector<TransitionPair> transfer_splitting_curve(const donor::DonorModel& control,
                                                     const std::vector<double>& r_grid,
                                                     const CurveOptions& options = {});

/// Smallest R on the grid-refined curve where J_excited >= factor * J_ground
/// and stays so to the end of the grid. Returns NaN when never reached.
double crossover_radius(const std::vector<PairIntegralResult>& ground,
                        const std::vector<PairIntegralResult>& excited, double factor = 1.0);

/// Log-linear interpolation of a positive J(R) curve; beyond the grid the
/// outermost decay rate is extrapolated. Thread-safe after construction.
class ExchangeTable {
 public:
  ExchangeTable() = default;
  ExchangeTable(std::vector<double> r, std::vector<double> j);

  double operator()(double r) const;
  bool empty() const { return r_.empty(); }
  const std::vector<double>& radii() const { return r_; }
  const std::vector<double>& values() const { return j_; }

 private:
  std::vector<double> r_;
  std::vector<double> log_j_;
  std::vector<double> j_;
};

}  // namespace sfg::integrals
