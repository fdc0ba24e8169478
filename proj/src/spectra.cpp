#include "sfg/spectra.hpp"

#include "sfg/error.hpp"
#include "sfg/units.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace sfg::spectra {

double SpectralModel::inhomogeneous_width() const {
  double sum = 0.0;
  for (const auto& c : disorder) sum += c.width * c.width;
  return std::sqrt(sum);
}

void validate(const SpectralModel& m) {
  if (!(m.homogeneous_width > 0.0)) throw PreconditionError("spectra", "homogeneous width must be positive");
  if (!(m.resolution_factor >= 1.0)) throw PreconditionError("spectra", "resolution factor must be >= 1");
  if (!std::isfinite(m.base_transition_energy)) throw PreconditionError("spectra", "base energy must be finite");
  for (const auto& c : m.disorder)
    if (!(c.width >= 0.0)) throw PreconditionError("spectra", "disorder width of " + c.name + " must be >= 0");
}

namespace {

integrals::ExchangeTable make_table(const std::vector<integrals::TransitionPair>& curve) {
  std::vector<double> r;
  std::vector<double> t;
  for (const auto& p : curve) {
    r.push_back(p.separation);
    t.push_back(std::abs(p.transfer));
  }
  return {std::move(r), std::move(t)};
}

}  // namespace

TransferTable::TransferTable(const std::vector<integrals::TransitionPair>& curve) : table_(make_table(curve)) {}

std::vector<TransitionLine> gate_transitions(const std::vector<ControlSite>& controls, const SpectralModel& model,
                                             const TransferFunction& transfer, std::uint64_t seed) {
  validate(model);
  if (controls.size() > 1 && !transfer)
    throw DependencyError("spectra", "transfer integrals are required for more than one control");

  std::vector<double> overlap(controls.size(), 0.0);
  for (std::size_t i = 0; i < controls.size(); ++i)
    for (std::size_t j = i + 1; j < controls.size(); ++j) {
      const double t = std::abs(transfer((controls[i].position - controls[j].position).norm()));
      overlap[i] -= t;
      overlap[j] += t;
    }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<TransitionLine> lines;
  for (std::size_t i = 0; i < controls.size(); ++i) {
    TransitionLine line;
    line.gate_id = controls[i].id;
    line.width = model.homogeneous_width;
    line.shift_breakdown.emplace_back("overlap", overlap[i]);
    double shift = overlap[i];
    for (const auto& c : model.disorder) {
      const double draw = normal(rng) * c.width / units::kFwhmPerSigma;
      line.shift_breakdown.emplace_back(c.name, draw);
      shift += draw;
    }
    line.energy = model.base_transition_energy + shift;
    lines.push_back(std::move(line));
  }
  return lines;
}

int resolvable_gate_count(std::vector<double> energies, double homogeneous_width, double k) {
  if (energies.empty()) throw PreconditionError("spectra", "no lines to count");
  if (!(homogeneous_width > 0.0) || !(k > 0.0))
    throw PreconditionError("spectra", "width and resolution factor must be positive");
  std::sort(energies.begin(), energies.end());
  const double gap = k * homogeneous_width;
  const double slack = 1e-9 * gap;
  int count = 1;
  double last = energies.front();
  for (std::size_t i = 1; i < energies.size(); ++i) {
    if (energies[i] - last >= gap - slack) {
      ++count;
      last = energies[i];
    }
  }
  return count;
}

int resolvable_gate_count(const std::vector<TransitionLine>& lines, double homogeneous_width, double k) {
  std::vector<double> e;
  e.reserve(lines.size());
  for (const auto& l : lines) e.push_back(l.energy);
  return resolvable_gate_count(std::move(e), homogeneous_width, k);
}

double mean_resolvable_count(int n_lines, double homogeneous_width, double inhomogeneous_width, double k, int draws,
                             std::uint64_t seed) {
  if (n_lines < 1 || draws < 1) throw PreconditionError("spectra", "need at least one line and one draw");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, inhomogeneous_width / units::kFwhmPerSigma);
  double total = 0.0;
  std::vector<double> e(static_cast<std::size_t>(n_lines));
  for (int d = 0; d < draws; ++d) {
    for (auto& v : e) v = normal(rng);
    total += resolvable_gate_count(e, homogeneous_width, k);
  }
  return total / draws;
}

}  // namespace sfg::spectra
