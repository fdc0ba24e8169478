#include "sfg/configure.hpp"

#include "sfg/error.hpp"
#include "sfg/units.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <set>

namespace sfg::configure {

std::vector<double> sample_epr_positions(std::size_t n, const EprModel& model, std::uint64_t seed) {
  if (!(model.offset_spread >= 0.0) || !(model.min_separation >= 0.0))
    throw PreconditionError("configure", "EPR spread and separation must be non-negative");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, model.offset_spread / units::kFwhmPerSigma);
  std::vector<double> out;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    out.clear();
    for (std::size_t i = 0; i < n; ++i) out.push_back(model.center + normal(rng));
    auto sorted = out;
    std::sort(sorted.begin(), sorted.end());
    bool ok = true;
    for (std::size_t i = 1; i < sorted.size(); ++i) ok = ok && sorted[i] - sorted[i - 1] >= model.min_separation;
    if (ok) return out;
  }
  throw PreconditionError("configure", "cannot place " + std::to_string(n) + " EPR lines with the requested spacing");
}

namespace {

double lorentzian(double x, double fwhm) {
  const double u = 2.0 * x / fwhm;
  return 1.0 / (1.0 + u * u);
}

void check_truth(const ScanTruth& t) {
  if (t.couplings.rows() != static_cast<Eigen::Index>(t.controls.size()) ||
      t.couplings.cols() != static_cast<Eigen::Index>(t.qubits.size()))
    throw DependencyError("configure", "coupling matrix does not match controls x qubits");
  if (!(t.homogeneous_width > 0.0)) throw PreconditionError("configure", "homogeneous width must be positive");
  if (!t.couplings.allFinite()) throw DependencyError("configure", "couplings must be finite");
}

// Component offsets (sum of +-J/2 over the excited couplings) of one line.
std::vector<double> components(const std::vector<double>& excited_couplings) {
  std::vector<double> out{0.0};
  for (double j : excited_couplings) {
    std::vector<double> next;
    for (double o : out) {
      next.push_back(o + 0.5 * j);
      next.push_back(o - 0.5 * j);
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

Eigen::VectorXd epr_row(const ScanTruth& truth, double omega, const std::vector<double>& axis, double linewidth) {
  check_truth(truth);
  Eigen::VectorXd row = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(axis.size()));
  std::vector<bool> excited;
  for (const auto& c : truth.controls) excited.push_back(std::abs(omega - c.energy) <= 0.5 * truth.homogeneous_width);
  for (std::size_t q = 0; q < truth.qubits.size(); ++q) {
    std::vector<double> js;
    for (std::size_t c = 0; c < truth.controls.size(); ++c)
      if (excited[c] && truth.couplings(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(q)) != 0.0)
        js.push_back(truth.couplings(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(q)));
    const auto offsets = components(js);
    const double weight = 1.0 / static_cast<double>(offsets.size());
    for (double o : offsets) {
      const double at = truth.qubits[q].position + o;
      for (std::size_t i = 0; i < axis.size(); ++i)
        row[static_cast<Eigen::Index>(i)] += weight * lorentzian(axis[i] - at, linewidth);
    }
  }
  return row;
}

ScanMap simulate_scan(const ScanTruth& truth, const EprModel& epr, const ScanOptions& options) {
  check_truth(truth);
  if (!(epr.linewidth > 0.0)) throw PreconditionError("configure", "EPR linewidth must be positive");
  if (options.samples_per_width < 2 || !(options.window_widths > 0.5))
    throw PreconditionError("configure", "optical sampling too coarse to resolve a line");

  ScanMap scan;
  scan.homogeneous_width = truth.homogeneous_width;
  scan.epr_linewidth = epr.linewidth;
  scan.epr_lines = truth.qubits;
  scan.optical_lines = truth.controls;

  const double dh = truth.homogeneous_width;
  std::vector<double> optical;
  if (truth.controls.empty()) {
    optical.push_back(0.0);
  } else {
    double lowest = truth.controls.front().energy;
    for (const auto& c : truth.controls) lowest = std::min(lowest, c.energy);
    optical.push_back(lowest - 5.0 * dh);
    const double step = dh / options.samples_per_width;
    const int half = static_cast<int>(std::ceil(options.window_widths * options.samples_per_width));
    for (const auto& c : truth.controls)
      for (int k = -half; k <= half; ++k) optical.push_back(c.energy + k * step);
    std::sort(optical.begin(), optical.end());
    std::vector<double> unique;
    for (double w : optical)
      if (unique.empty() || w - unique.back() > 1e-9 * dh) unique.push_back(w);
    optical = std::move(unique);
  }
  scan.optical_axis = optical;

  double lo = epr.center;
  double hi = epr.center;
  for (std::size_t q = 0; q < truth.qubits.size(); ++q) {
    const double reach = 0.5 * truth.couplings.col(static_cast<Eigen::Index>(q)).cwiseAbs().sum();
    lo = std::min(lo, truth.qubits[q].position - reach);
    hi = std::max(hi, truth.qubits[q].position + reach);
  }
  lo -= options.epr_margin * epr.linewidth;
  hi += options.epr_margin * epr.linewidth;
  const double step = epr.linewidth / 4.0;
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step)) + 1;
  scan.epr_axis.resize(n);
  for (std::size_t i = 0; i < n; ++i) scan.epr_axis[i] = lo + step * static_cast<double>(i);

  scan.response.resize(static_cast<Eigen::Index>(optical.size()), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < optical.size(); ++r)
    scan.response.row(static_cast<Eigen::Index>(r)) = epr_row(truth, optical[r], scan.epr_axis, epr.linewidth);
  return scan;
}

void write_csv(std::ostream& out, const ScanMap& scan) {
  out.precision(10);
  out << "optical_meV";
  for (double e : scan.epr_axis) out << ",epr_" << e;
  out << "\n";
  for (Eigen::Index r = 0; r < scan.response.rows(); ++r) {
    out << scan.optical_axis[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < scan.response.cols(); ++c) out << "," << scan.response(r, c);
    out << "\n";
  }
}

const ControlHypothesis* AdjacencyHypothesis::find(const std::string& label) const {
  for (const auto& c : controls)
    if (c.label == label) return &c;
  return nullptr;
}

namespace {

class RowFitter {
 public:
  RowFitter(const ScanMap& scan) : scan_(scan), step_(scan.epr_axis.size() > 1 ? scan.epr_axis[1] - scan.epr_axis[0] : 1.0) {}

  // Doublet displacement of every EPR line in one row, by coordinate descent.
  std::vector<double> fit(const Eigen::VectorXd& row) const {
    const std::size_t nq = scan_.epr_lines.size();
    std::vector<double> d(nq, 0.0);
    for (int pass = 0; pass < 3; ++pass) {
      for (std::size_t q = 0; q < nq; ++q) {
        Eigen::VectorXd residual = row;
        for (std::size_t p = 0; p < nq; ++p)
          if (p != q) residual -= doublet(scan_.epr_lines[p].position, d[p]);
        d[q] = fit_line(residual, scan_.epr_lines[q].position);
      }
    }
    return d;
  }

 private:
  Eigen::VectorXd doublet(double x0, double d) const {
    Eigen::VectorXd v(static_cast<Eigen::Index>(scan_.epr_axis.size()));
    for (std::size_t i = 0; i < scan_.epr_axis.size(); ++i) {
      const double x = scan_.epr_axis[i] - x0;
      v[static_cast<Eigen::Index>(i)] =
          0.5 * (lorentzian(x - d, scan_.epr_linewidth) + lorentzian(x + d, scan_.epr_linewidth));
    }
    return v;
  }

  double sample(const Eigen::VectorXd& r, double x) const {
    const double f = (x - scan_.epr_axis.front()) / step_;
    if (f < 0.0 || f > static_cast<double>(scan_.epr_axis.size() - 1)) return 0.0;
    const auto i = static_cast<Eigen::Index>(std::floor(f));
    const double w = f - static_cast<double>(i);
    if (i + 1 >= r.size()) return r[i];
    return (1.0 - w) * r[i] + w * r[i + 1];
  }

  double fit_line(const Eigen::VectorXd& residual, double x0) const {
    // Coarse: both doublet components must be present.
    const double span = std::max(x0 - scan_.epr_axis.front(), scan_.epr_axis.back() - x0);
    double best_d = 0.0;
    double best_score = -1e300;
    for (double d = 0.0; d <= span; d += step_) {
      const double score = std::min(sample(residual, x0 + d), sample(residual, x0 - d));
      if (score > best_score + 1e-12) {
        best_score = score;
        best_d = d;
      }
    }
    // Fine: local least squares around the coarse pick.
    const double window = 10.0 * scan_.epr_linewidth;
    auto cost = [&](double d) {
      double c = 0.0;
      for (std::size_t i = 0; i < scan_.epr_axis.size(); ++i) {
        const double x = scan_.epr_axis[i] - x0;
        if (std::abs(std::abs(x) - d) > window) continue;
        const double m = 0.5 * (lorentzian(x - d, scan_.epr_linewidth) + lorentzian(x + d, scan_.epr_linewidth));
        const double e = residual[static_cast<Eigen::Index>(i)] - m;
        c += e * e;
      }
      return c;
    };
    const double lo = std::max(0.0, best_d - 2.0 * step_);
    const double hi = best_d + 2.0 * step_;
    const auto [d, value] = boost::math::tools::brent_find_minima(cost, lo, hi, 40);
    return value <= cost(best_d) ? d : best_d;
  }

  const ScanMap& scan_;
  double step_;
};

}  // namespace

AdjacencyHypothesis infer_adjacency(const ScanMap& scan, double threshold) {
  if (!(threshold > 0.0)) throw PreconditionError("configure", "detection threshold must be positive");
  AdjacencyHypothesis out;
  const auto rows = scan.response.rows();
  if (rows == 0 || scan.epr_lines.empty()) return out;

  const RowFitter fitter(scan);
  std::vector<std::vector<double>> displacement(static_cast<std::size_t>(rows));
  std::vector<std::set<std::size_t>> pattern(static_cast<std::size_t>(rows));
  for (Eigen::Index r = 1; r < rows; ++r) {  // row 0 is the unexcited baseline
    const Eigen::VectorXd row = scan.response.row(r).transpose();
    if ((row - scan.response.row(0).transpose()).cwiseAbs().maxCoeff() < 1e-12) continue;
    auto d = fitter.fit(row);
    for (std::size_t q = 0; q < d.size(); ++q)
      if (2.0 * d[q] >= threshold) pattern[static_cast<std::size_t>(r)].insert(q);
    displacement[static_cast<std::size_t>(r)] = std::move(d);
  }

  const double dh = scan.homogeneous_width;
  const double optical_step = rows > 2 ? scan.optical_axis[2] - scan.optical_axis[1] : dh;
  int unnamed = 0;
  for (Eigen::Index r = 1; r < rows;) {
    if (pattern[static_cast<std::size_t>(r)].empty()) {
      ++r;
      continue;
    }
    Eigen::Index end = r;
    bool ambiguous = false;
    while (end + 1 < rows && !pattern[static_cast<std::size_t>(end + 1)].empty()) {
      const auto& a = displacement[static_cast<std::size_t>(end)];
      const auto& b = displacement[static_cast<std::size_t>(end + 1)];
      if (pattern[static_cast<std::size_t>(end + 1)] != pattern[static_cast<std::size_t>(r)]) ambiguous = true;
      for (std::size_t q = 0; q < a.size(); ++q)
        if (std::abs(a[q] - b[q]) > 0.01 * std::max(std::abs(a[q]), threshold)) ambiguous = true;
      ++end;
    }
    const double first = scan.optical_axis[static_cast<std::size_t>(r)];
    const double last = scan.optical_axis[static_cast<std::size_t>(end)];
    if (last - first > dh + 1.5 * optical_step) ambiguous = true;

    ControlHypothesis h;
    h.optical_energy = 0.5 * (first + last);
    h.ambiguous = ambiguous;
    double nearest = 0.5 * dh + optical_step;
    for (const auto& line : scan.optical_lines) {
      const double gap = std::abs(line.energy - h.optical_energy);
      if (gap <= nearest) {
        nearest = gap;
        h.label = line.label;
      }
    }
    if (h.label.empty()) h.label = "R" + std::to_string(++unnamed);
    const auto mid = static_cast<std::size_t>((r + end) / 2);
    for (std::size_t q : pattern[mid]) {
      h.qubits.push_back(scan.epr_lines[q].label);
      h.couplings.push_back(2.0 * displacement[mid][q]);
    }
    out.controls.push_back(std::move(h));
    r = end + 1;
  }
  return out;
}

spins::GateReport calibrate_gate_time(const ScanTruth& truth, const AdjacencyHypothesis& adjacency,
                                      const std::string& control, const spins::GateSearch& search) {
  check_truth(truth);
  const auto* hypothesis = adjacency.find(control);
  if (hypothesis == nullptr) throw PreconditionError("configure", "no inferred resonance for control " + control);
  if (hypothesis->qubits.size() < 2)
    throw PreconditionError("configure", "control " + control + " couples fewer than two qubits");

  auto control_index = [&]() -> Eigen::Index {
    for (std::size_t c = 0; c < truth.controls.size(); ++c)
      if (truth.controls[c].label == control) return static_cast<Eigen::Index>(c);
    throw DependencyError("configure", "control " + control + " is not part of the scenario");
  }();
  auto qubit_index = [&](const std::string& label) -> Eigen::Index {
    for (std::size_t q = 0; q < truth.qubits.size(); ++q)
      if (truth.qubits[q].label == label) return static_cast<Eigen::Index>(q);
    throw DependencyError("configure", "qubit " + label + " is not part of the scenario");
  };

  spins::SpinSystem inferred;
  spins::SpinSystem actual;
  inferred.add_spin(control, spins::SpinRole::control);
  actual.add_spin(control, spins::SpinRole::control);
  for (std::size_t k = 0; k < hypothesis->qubits.size(); ++k) {
    const auto& label = hypothesis->qubits[k];
    const int i = inferred.add_spin(label, spins::SpinRole::qubit);
    actual.add_spin(label, spins::SpinRole::qubit);
    inferred.set_coupling(0, i, hypothesis->couplings[k]);
    actual.set_coupling(0, i, truth.couplings(control_index, qubit_index(label)));
  }

  const auto calibrated = spins::sfg_gate(inferred, 0, search);
  const auto reference = spins::sfg_gate(actual, 0, search);
  return spins::evaluate_gate(actual, 0, calibrated.duration, reference.qubit_unitary);
}

}  // namespace sfg::configure
