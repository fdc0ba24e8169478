#pragma once

// Units policy: lengths in angstrom, energies in meV, times in ps,
// fields in tesla, temperatures in kelvin. eV only at preset construction.

namespace sfg::units {

// Effective-mass conversion values as used for the donor estimates.
inline constexpr double kRydbergEv = 13.6;
inline constexpr double kBohrAngstrom = 0.529;

/// e^2/(4 pi eps0) consistent with the Rydberg/Bohr pair above, so that a
/// hydrogenic 1s level of radius a* in a medium eps binds exactly R_eff.
inline constexpr double kCoulombMevAngstrom = 2.0 * kRydbergEv * kBohrAngstrom * 1000.0;

inline constexpr double kHbarMevPs = 0.6582119569;
inline constexpr double kBohrMagnetonMevPerTesla = 5.7883818060e-2;
inline constexpr double kBoltzmannMevPerKelvin = 8.617333262e-2;

/// h*c in eV*nm, used to convert wavelength widths to energy widths.
inline constexpr double kPlanckCEvNm = 1239.841984;

inline constexpr double kPi = 3.14159265358979323846;

/// FWHM = kFwhmPerSigma * sigma for a Gaussian.
inline constexpr double kFwhmPerSigma = 2.3548200450309493;

inline constexpr double mev_from_ev(double ev) { return ev * 1000.0; }

/// Energy width (meV) of a wavelength interval `dlambda_nm` centred at `lambda_nm`.
inline constexpr double mev_from_wavelength_width(double dlambda_nm, double lambda_nm) {
  return 1000.0 * kPlanckCEvNm * dlambda_nm / (lambda_nm * lambda_nm);
}

}  // namespace sfg::units
