#include "sfg/integrals.hpp"

#include "sfg/error.hpp"
#include "sfg/quadrature.hpp"
#include "sfg/units.hpp"

#include <Eigen/QR>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>

namespace sfg::integrals {

std::string to_string(OrbitalKind kind) { return kind == OrbitalKind::s1 ? "1s" : "2p"; }

namespace {

constexpr double kPi = units::kPi;
constexpr double kMinLogExponent = -12.0;
constexpr double kMaxLogExponent = 9.0;

// Fit of the canonical radial shape (e^-x for s, x e^-x for p) by
// sum_k d_k e^{-beta_k x^2} (times x for p).
struct CanonicalFit {
  std::vector<double> betas;
  std::vector<double> amplitudes;  // d_k
  double error = 0.0;
};

struct FitProblem {
  OrbitalKind kind;
  Eigen::VectorXd x;
  Eigen::VectorXd sqrt_w;  // sqrt(weight * e^{2x}), relative-error weighting
  Eigen::VectorXd target;

  Eigen::MatrixXd basis(const Eigen::VectorXd& log_betas) const {
    Eigen::MatrixXd b(x.size(), log_betas.size());
    for (Eigen::Index k = 0; k < log_betas.size(); ++k) {
      const double beta = std::exp(std::clamp(log_betas[k], kMinLogExponent, kMaxLogExponent));
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double g = std::exp(-beta * x[i] * x[i]);
        b(i, k) = kind == OrbitalKind::s1 ? g : x[i] * g;
      }
    }
    return b;
  }

  // Variable projection: optimal linear amplitudes for given exponents.
  Eigen::VectorXd amplitudes(const Eigen::VectorXd& log_betas, Eigen::VectorXd* residual) const {
    const Eigen::MatrixXd a = sqrt_w.asDiagonal() * basis(log_betas);
    const Eigen::VectorXd rhs = sqrt_w.cwiseProduct(target);
    Eigen::VectorXd d = a.colPivHouseholderQr().solve(rhs);
    if (residual != nullptr) *residual = a * d - rhs;
    return d;
  }
};

struct ProjectedResidual {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  const FitProblem* problem = nullptr;
  int n = 0;

  int inputs() const { return n; }
  int values() const { return static_cast<int>(problem->x.size()); }
  int operator()(const Eigen::VectorXd& log_betas, Eigen::VectorXd& fvec) const {
    problem->amplitudes(log_betas, &fvec);
    return 0;
  }
};

double squared_residual(const FitProblem& problem, const Eigen::VectorXd& log_betas) {
  Eigen::VectorXd r;
  problem.amplitudes(log_betas, &r);
  return r.squaredNorm();
}

Eigen::VectorXd refine(const FitProblem& problem, Eigen::VectorXd log_betas) {
  ProjectedResidual functor{&problem, static_cast<int>(log_betas.size())};
  Eigen::NumericalDiff<ProjectedResidual> numeric(functor);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<ProjectedResidual>> lm(numeric);
  lm.parameters.maxfev = 4000;
  lm.parameters.xtol = 1e-12;
  lm.parameters.ftol = 1e-14;
  const double before = squared_residual(problem, log_betas);
  Eigen::VectorXd trial = log_betas;
  lm.minimize(trial);
  for (auto& v : trial) v = std::clamp(v, kMinLogExponent, kMaxLogExponent);
  if (!trial.allFinite() || squared_residual(problem, trial) > before) return log_betas;
  std::sort(trial.begin(), trial.end());
  return trial;
}

FitProblem make_problem(OrbitalKind kind, const FitOptions& options) {
  if (!(options.window > 0.0) || options.quadrature_points < 8)
    throw PreconditionError("integrals", "invalid fit window or quadrature size");
  const auto rule = quadrature::gauss_legendre(options.quadrature_points, 0.0, options.window);
  FitProblem p{kind, {}, {}, {}};
  const auto n = static_cast<Eigen::Index>(rule.nodes.size());
  p.x.resize(n);
  p.sqrt_w.resize(n);
  p.target.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = rule.nodes[i];
    p.x[i] = x;
    // e^{2x} weighting: relative error for s, x-weighted relative error for p.
    p.sqrt_w[i] = std::sqrt(rule.weights[i]) * std::exp(x);
    p.target[i] = kind == OrbitalKind::s1 ? std::exp(-x) : x * std::exp(-x);
  }
  return p;
}

// Fits for 3..n terms, each warm-started from the previous optimum with one
// exponent inserted, so the residual never increases with n.
std::vector<Eigen::VectorXd> fit_sequence(const FitProblem& problem, int n_max) {
  std::vector<Eigen::VectorXd> out;
  Eigen::VectorXd best;
  double best_r = std::numeric_limits<double>::infinity();
  for (double lo : {-5.0, -4.0, -3.0}) {
    for (double step : {1.5, 2.0, 2.5}) {
      Eigen::VectorXd start(3);
      for (int k = 0; k < 3; ++k) start[k] = lo + step * k;
      auto trial = refine(problem, start);
      const double r = squared_residual(problem, trial);
      if (r < best_r) {
        best_r = r;
        best = trial;
      }
    }
  }
  out.push_back(best);
  for (int n = 4; n <= n_max; ++n) {
    const auto& prev = out.back();
    std::vector<double> inserts{prev[0] - 1.5, prev[prev.size() - 1] + 1.5};
    for (Eigen::Index k = 0; k + 1 < prev.size(); ++k) inserts.push_back(0.5 * (prev[k] + prev[k + 1]));
    Eigen::VectorXd chosen;
    double chosen_r = std::numeric_limits<double>::infinity();
    for (double extra : inserts) {
      Eigen::VectorXd start(n);
      start << prev, extra;
      std::sort(start.begin(), start.end());
      auto trial = refine(problem, start);
      const double r = squared_residual(problem, trial);
      if (r < chosen_r) {
        chosen_r = r;
        chosen = trial;
      }
    }
    out.push_back(chosen);
  }
  return out;
}

double rms_relative_error(const FitProblem& problem, const Eigen::VectorXd& log_betas, double window) {
  return std::sqrt(squared_residual(problem, log_betas) / window);
}

const CanonicalFit& canonical_fit(OrbitalKind kind, int n_terms, const FitOptions& options) {
  using Key = std::tuple<OrbitalKind, int, double, int>;
  static std::mutex mutex;
  static std::map<Key, CanonicalFit> cache;
  std::lock_guard lock(mutex);
  const Key key{kind, n_terms, options.window, options.quadrature_points};
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  const auto problem = make_problem(kind, options);
  const auto sequence = fit_sequence(problem, std::max(n_terms, 3));
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const int n = static_cast<int>(i) + 3;
    const Key k{kind, n, options.window, options.quadrature_points};
    if (cache.contains(k)) continue;
    CanonicalFit fit;
    const auto& lb = sequence[i];
    const Eigen::VectorXd d = problem.amplitudes(lb, nullptr);
    for (Eigen::Index j = 0; j < lb.size(); ++j) {
      fit.betas.push_back(std::exp(lb[j]));
      fit.amplitudes.push_back(d[j]);
    }
    fit.error = rms_relative_error(problem, lb, options.window);
    cache.emplace(k, std::move(fit));
  }
  return cache.at(key);
}

gaussian::Contracted contract(const OrbitalSpec& orbital, const std::vector<GaussianTerm>& terms) {
  gaussian::Contracted out;
  if (orbital.kind == OrbitalKind::s1) {
    for (const auto& t : terms)
      out.push_back({orbital.center, t.exponent, t.coefficient * gaussian::primitive_norm(t.exponent, 0), {0, 0, 0}});
    return out;
  }
  const Eigen::Vector3d n = orbital.axis.normalized();
  for (int c = 0; c < 3; ++c) {
    if (std::abs(n[c]) < 1e-15) continue;
    std::array<int, 3> powers{0, 0, 0};
    powers[c] = 1;
    for (const auto& t : terms)
      out.push_back(
          {orbital.center, t.exponent, t.coefficient * n[c] * gaussian::primitive_norm(t.exponent, 1), powers});
  }
  return out;
}

void check_orbital(const OrbitalSpec& o) {
  if (!(o.bohr_radius > 0.0) || !std::isfinite(o.bohr_radius))
    throw PreconditionError("integrals", "orbital radius must be positive");
  if (o.kind == OrbitalKind::p2 && !(o.axis.norm() > 0.0))
    throw PreconditionError("integrals", "p orbital needs a non-zero axis");
}

}  // namespace

gaussian::Contracted GaussianExpansion::contracted() const { return contract(target, terms); }

GaussianExpansion fit_gaussian_expansion(const OrbitalSpec& orbital, int n_terms, const FitOptions& options) {
  if (n_terms < 3) throw PreconditionError("integrals", "n_terms must be >= 3");
  check_orbital(orbital);
  const auto& fit = canonical_fit(orbital.kind, n_terms, options);
  if (!std::isfinite(fit.error) || fit.error > options.tolerance)
    throw FitFailureError("Slater-Gaussian fit did not reach tolerance", fit.error);

  // Canonical amplitudes -> coefficients of normalized primitives. These are
  // independent of the radius; only the exponents scale.
  const double a = orbital.bohr_radius;
  const double length = orbital.kind == OrbitalKind::s1 ? a : 2.0 * a;
  GaussianExpansion out;
  out.target = orbital;
  out.target.axis = orbital.axis.normalized();
  out.fit_error = fit.error;
  for (std::size_t k = 0; k < fit.betas.size(); ++k) {
    const double alpha = fit.betas[k] / (length * length);
    double coef;
    if (orbital.kind == OrbitalKind::s1) {
      coef = std::pow(kPi * a * a * a, -0.5) * fit.amplitudes[k] / gaussian::primitive_norm(alpha, 0);
    } else {
      coef = 1.0 / (4.0 * std::sqrt(2.0 * kPi)) * std::pow(a, -2.5) * fit.amplitudes[k] /
             gaussian::primitive_norm(alpha, 1);
    }
    out.terms.push_back({alpha, coef});
  }
  const auto c = out.contracted();
  const double norm = std::sqrt(gaussian::overlap(c, c));
  for (auto& t : out.terms) t.coefficient /= norm;
  return out;
}

double Medium::coulomb_scale() const { return units::kCoulombMevAngstrom / dielectric_constant; }

double effective_charge(double orbital_radius, double coulombic_binding_mev, const Medium& medium) {
  return medium.host_bohr_radius / (2.0 * orbital_radius) +
         coulombic_binding_mev * orbital_radius / medium.coulomb_scale();
}

RawIntegrals raw_integrals(const OrbitalSpec& a, const OrbitalSpec& b, const PairOptions& options) {
  check_orbital(a);
  check_orbital(b);
  if ((a.center - b.center).norm() < 1e-9) throw PreconditionError("integrals", "orbital centres coincide");
  const auto ca = fit_gaussian_expansion(a, options.gaussian_terms).contracted();
  const auto cb = fit_gaussian_expansion(b, options.gaussian_terms).contracted();
  RawIntegrals r;
  r.s = gaussian::overlap(ca, cb);
  r.a_rb_a = gaussian::nuclear_attraction(ca, ca, b.center);
  r.b_ra_b = gaussian::nuclear_attraction(cb, cb, a.center);
  r.a_ra_b = gaussian::nuclear_attraction(ca, cb, a.center);
  r.a_rb_b = gaussian::nuclear_attraction(ca, cb, b.center);
  if (options.two_electron) {
    r.aa_bb = gaussian::electron_repulsion(ca, ca, cb, cb);
    r.ab_ab = gaussian::electron_repulsion(ca, cb, ca, cb);
  } else {
    r.aa_bb = r.ab_ab = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

namespace {

// <1/r> about the own centre and the orbital energy of the host kinetic
// operator plus c/r, both exact for hydrogenic shapes.
double self_inverse_r(const OrbitalSpec& o) {
  return o.kind == OrbitalKind::s1 ? 1.0 / o.bohr_radius : 1.0 / (4.0 * o.bohr_radius);
}

double orbital_energy(const OrbitalSpec& o, const Medium& m) {
  const double a = o.bohr_radius;
  const double n2 = o.kind == OrbitalKind::s1 ? 1.0 : 4.0;
  return -m.coulomb_scale() * m.host_bohr_radius / (2.0 * n2 * a * a);
}

}  // namespace

PairIntegralResult assemble(const OrbitalSpec& a, const OrbitalSpec& b, const RawIntegrals& r, const Medium& medium,
                            const EffectiveCharges& z) {
  if (std::abs(r.s) > 0.999)
    throw IllConditionedGeometryError("orbital overlap too close to 1 for a two-centre basis", r.s);
  const double u = medium.coulomb_scale();
  // Each orbital obeys (T - u Z/r) phi = eps phi + u c phi / r with
  // c = a_host/a - Z, so orbital energies cancel from J and from t.
  const double ca = medium.host_bohr_radius / a.bohr_radius - z.a;
  const double cb = medium.host_bohr_radius / b.bohr_radius - z.b;
  const double sa = self_inverse_r(a);
  const double sb = self_inverse_r(b);
  const double s = r.s;

  const double q = ca * sa + cb * sb - z.b * r.a_rb_a - z.a * r.b_ra_b + r.aa_bb;
  const double x = s * ((cb * r.a_rb_b - z.a * r.a_ra_b) + (ca * r.a_ra_b - z.b * r.a_rb_b)) + r.ab_ab;

  PairIntegralResult out;
  out.separation = (b.center - a.center).norm();
  out.overlap = s;
  out.coulomb = u * r.aa_bb;
  out.exchange_integral = u * r.ab_ab;
  out.exchange_splitting = 2.0 * u * (s * s * q - x) / (1.0 - s * s * s * s);

  const double ea = orbital_energy(a, medium);
  const double eb = orbital_energy(b, medium);
  const double h_ab = 0.5 * ((eb * s + u * (cb * r.a_rb_b - z.a * r.a_ra_b)) +
                             (ea * s + u * (ca * r.a_ra_b - z.b * r.a_rb_b)));
  const double h_aa = ea + u * (ca * sa - z.b * r.a_rb_a);
  const double h_bb = eb + u * (cb * sb - z.a * r.b_ra_b);
  out.transfer = (h_ab - 0.5 * s * (h_aa + h_bb)) / (1.0 - s * s);

  out.kind_a = a.kind;
  out.kind_b = b.kind;
  out.radius_a = a.bohr_radius;
  out.radius_b = b.bohr_radius;
  return out;
}

PairIntegralResult pair_integrals(const OrbitalSpec& a, const OrbitalSpec& b, const Medium& medium,
                                  const EffectiveCharges& charges, const PairOptions& options) {
  return assemble(a, b, raw_integrals(a, b, options), medium, charges);
}

PairSetup control_qubit_setup(const donor::DonorModel& control, const donor::DonorModel& qubit, bool excited,
                              const Eigen::Vector3d& offset, const CurveOptions& options) {
  donor::validate(control);
  donor::validate(qubit);
  PairSetup s;
  s.medium = Medium{control.dielectric_constant, control.effective_bohr_radius};
  s.control.kind = excited ? OrbitalKind::p2 : OrbitalKind::s1;
  s.control.bohr_radius = control.orbital_radius();
  s.control.center = Eigen::Vector3d::Zero();
  s.control.axis = options.axis_mode == AxisMode::inter_center ? offset.normalized() : options.fixed_axis.normalized();
  s.qubit.kind = OrbitalKind::s1;
  s.qubit.bohr_radius = qubit.orbital_radius();
  s.qubit.center = offset;
  s.charges.a = effective_charge(s.control.bohr_radius, units::mev_from_ev(control.coulombic_binding()), s.medium);
  s.charges.b = effective_charge(s.qubit.bohr_radius, units::mev_from_ev(qubit.coulombic_binding()), s.medium);
  return s;
}

namespace {

void check_grid(const std::vector<double>& r_grid) {
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (!(r_grid[i] > 0.0)) throw PreconditionError("integrals", "separations must be positive");
    if (i > 0 && !(r_grid[i] > r_grid[i - 1]))
      throw PreconditionError("integrals", "separation grid must be increasing");
  }
}

template <typename Fn>
auto map_concurrently(const std::vector<double>& grid, Fn fn) {
  using Result = decltype(fn(0.0));
  std::vector<std::future<Result>> futures;
  futures.reserve(grid.size());
  for (double r : grid) futures.push_back(std::async(std::launch::async, fn, r));
  std::vector<Result> out;
  out.reserve(grid.size());
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

}  // namespace

std::vector<PairIntegralResult> exchange_curve(const donor::DonorModel& control, const donor::DonorModel& qubit,
                                               bool excited, const std::vector<double>& r_grid,
                                               const CurveOptions& options) {
  check_grid(r_grid);
  // Warm the fit cache before fanning out.
  fit_gaussian_expansion({OrbitalKind::s1, 1.0}, options.gaussian_terms);
  fit_gaussian_expansion({OrbitalKind::p2, 1.0}, options.gaussian_terms);
  return map_concurrently(r_grid, [&](double r) {
    const auto s = control_qubit_setup(control, qubit, excited, Eigen::Vector3d(r, 0.0, 0.0), options);
    return pair_integrals(s.control, s.qubit, s.medium, s.charges, {options.gaussian_terms, true});
  });
}

double base_transition_energy(const donor::DonorModel& control) {
  return 0.75 * units::mev_from_ev(control.coulombic_binding());
}

std::vector<TransitionPair> transfer_splitting_curve(const donor::DonorModel& control,
                                                     const std::vector<double>& r_grid,
                                                     const CurveOptions& options) {
  check_grid(r_grid);
  donor::validate(control);
  fit_gaussian_expansion({OrbitalKind::p2, 1.0}, options.gaussian_terms);
  const double base = base_transition_energy(control);
  return map_concurrently(r_grid, [&](double r) {
    const Medium medium{control.dielectric_constant, control.effective_bohr_radius};
    const double radius = control.orbital_radius();
    const double z = effective_charge(radius, units::mev_from_ev(control.coulombic_binding()), medium);
    const Eigen::Vector3d line(1.0, 0.0, 0.0);
    const Eigen::Vector3d axis = options.axis_mode == AxisMode::inter_center ? line : options.fixed_axis.normalized();
    OrbitalSpec a{OrbitalKind::p2, radius, Eigen::Vector3d::Zero(), axis};
    OrbitalSpec b{OrbitalKind::p2, radius, r * line,
                  options.axis_mode == AxisMode::inter_center ? Eigen::Vector3d(-line) : axis};
    const auto res = pair_integrals(a, b, medium, {z, z}, {options.gaussian_terms, false});
    const double t = std::abs(res.transfer);
    return TransitionPair{r, base - t, base + t, res.transfer};
  });
}

double crossover_radius(const std::vector<PairIntegralResult>& ground, const std::vector<PairIntegralResult>& excited,
                        double factor) {
  if (ground.size() != excited.size() || ground.empty())
    throw PreconditionError("integrals", "crossover needs two curves on the same grid");
  auto log_excess = [&](std::size_t i) {
    return std::log(std::abs(excited[i].exchange_splitting)) - std::log(std::abs(ground[i].exchange_splitting)) -
           std::log(factor);
  };
  const std::size_t n = ground.size();
  if (log_excess(n - 1) < 0.0) return std::numeric_limits<double>::quiet_NaN();
  std::size_t last_below = n;
  for (std::size_t i = 0; i < n; ++i)
    if (log_excess(i) < 0.0) last_below = i;
  if (last_below == n) return ground.front().separation;
  const double r0 = ground[last_below].separation;
  const double r1 = ground[last_below + 1].separation;
  const double f0 = log_excess(last_below);
  const double f1 = log_excess(last_below + 1);
  return r0 + (r1 - r0) * (-f0) / (f1 - f0);
}

ExchangeTable::ExchangeTable(std::vector<double> r, std::vector<double> j) : r_(std::move(r)), j_(std::move(j)) {
  if (r_.size() != j_.size() || r_.size() < 2)
    throw PreconditionError("integrals", "exchange table needs at least two points");
  for (std::size_t i = 1; i < r_.size(); ++i)
    if (!(r_[i] > r_[i - 1])) throw PreconditionError("integrals", "exchange table radii must increase");
  log_j_.reserve(j_.size());
  for (double v : j_) log_j_.push_back(std::log(std::max(std::abs(v), 1e-300)));
}

double ExchangeTable::operator()(double r) const {
  if (r_.empty()) return 0.0;
  std::size_t hi = static_cast<std::size_t>(std::upper_bound(r_.begin(), r_.end(), r) - r_.begin());
  hi = std::clamp<std::size_t>(hi, 1, r_.size() - 1);
  const std::size_t lo = hi - 1;
  const double slope = (log_j_[hi] - log_j_[lo]) / (r_[hi] - r_[lo]);
  return std::exp(log_j_[lo] + slope * (r - r_[lo]));
}

}  // namespace sfg::integrals
