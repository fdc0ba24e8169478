#include "sfg/lattice.hpp"

#include "sfg/error.hpp"
#include "sfg/units.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <unordered_set>

namespace sfg::lattice {

namespace detail {

void validate(const LatticeSpec& spec) {
  if (!(spec.lattice_constant > 0.0) || !std::isfinite(spec.lattice_constant))
    throw InvalidSpecError("lattice constant must be positive");
  if (!(spec.bounding_radius >= 0.0) || !std::isfinite(spec.bounding_radius))
    throw InvalidSpecError("bounding radius must be non-negative");
}

std::int64_t squared_limit(const LatticeSpec& spec) {
  const long double scaled = 4.0L * spec.bounding_radius / spec.lattice_constant;
  // Relative slack so that sites exactly on the sphere are kept.
  return static_cast<std::int64_t>(std::floor(scaled * scaled * (1.0L + 1e-12L)));
}

}  // namespace detail

namespace {

std::uint64_t pack(const LatticePoint& p) {
  constexpr std::int64_t kBias = 1 << 20;
  return (static_cast<std::uint64_t>(p.x + kBias) << 42) |
         (static_cast<std::uint64_t>(p.y + kBias) << 21) |
         static_cast<std::uint64_t>(p.z + kBias);
}

void validate_mix(const SpeciesMix& mix) {
  if (mix.empty()) throw PreconditionError("lattice", "species mix is empty");
  double total = 0.0;
  for (const auto& [name, fraction] : mix) {
    if (!(fraction >= 0.0)) throw PreconditionError("lattice", "negative fraction for " + name);
    total += fraction;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw PreconditionError("lattice", "species fractions must sum to 1");
}

}  // namespace

std::size_t ShellTable::total_sites() const {
  return std::accumulate(shells.begin(), shells.end(), std::size_t{0},
                         [](std::size_t acc, const Shell& s) { return acc + s.site_count; });
}

double DopedRegion::concentration() const {
  return site_count == 0 ? 0.0
                         : static_cast<double>(placements.size()) / static_cast<double>(site_count);
}

double NeighborStatistics::sigma(std::size_t k) const {
  if (counted_dopants == 0 || k >= analytic.size()) return 0.0;
  const double p = analytic[k];
  return std::sqrt(p * (1.0 - p) / static_cast<double>(counted_dopants));
}

bool is_diamond_site(const LatticePoint& p) {
  const int parity = p.x & 1;
  if ((p.y & 1) != parity || (p.z & 1) != parity) return false;
  const int residue = (((p.x + p.y + p.z) % 4) + 4) % 4;
  return residue == (parity ? 3 : 0);
}

Eigen::Vector3d to_position(const LatticePoint& p, double lattice_constant) {
  const double unit = lattice_constant / 4.0;
  return {unit * p.x, unit * p.y, unit * p.z};
}

std::vector<Site> enumerate_sites(const LatticeSpec& spec) {
  std::vector<Site> sites;
  std::int64_t index = 0;
  for_each_site(spec, [&](const LatticePoint& p) {
    sites.push_back(Site{to_position(p, spec.lattice_constant), index++, p});
  });
  return sites;
}

std::size_t count_sites(const LatticeSpec& spec, bool include_center) {
  std::size_t n = 0;
  for_each_site(spec, [&](const LatticePoint&) { ++n; });
  return include_center ? n : n - 1;
}

double continuum_site_estimate(double radius, double lattice_constant) {
  const double density = 8.0 / (lattice_constant * lattice_constant * lattice_constant);
  return density * 4.0 / 3.0 * units::kPi * radius * radius * radius;
}

ShellTable shell_sizes(const LatticeSpec& spec, int n_shells) {
  if (n_shells < 1) throw PreconditionError("lattice", "n_shells must be >= 1");
  std::map<std::int64_t, std::size_t> histogram;
  for_each_site(spec, [&](const LatticePoint& p) {
    if (const auto n2 = p.norm2(); n2 > 0) ++histogram[n2];
  });
  if (histogram.size() < static_cast<std::size_t>(n_shells))
    throw InsufficientRegionError("bounding radius holds only " + std::to_string(histogram.size()) +
                                  " complete shells, " + std::to_string(n_shells) + " requested");
  ShellTable table;
  for (const auto& [n2, count] : histogram) {
    if (table.shells.size() == static_cast<std::size_t>(n_shells)) break;
    table.shells.push_back(
        Shell{spec.lattice_constant / 4.0 * std::sqrt(static_cast<double>(n2)), n2, count});
  }
  return table;
}

std::vector<LatticePoint> shell_offsets(int n_shells) {
  // Grow the probe sphere until it holds the requested number of shells.
  for (double radius = 2.0;; radius *= 1.5) {
    LatticeSpec probe{4.0, radius};
    std::map<std::int64_t, int> shells;
    for_each_site(probe, [&](const LatticePoint& p) {
      if (p.norm2() > 0) shells[p.norm2()] = 0;
    });
    if (shells.size() < static_cast<std::size_t>(n_shells)) continue;
    const std::int64_t cutoff = std::next(shells.begin(), n_shells - 1)->first;
    std::vector<LatticePoint> offsets;
    for_each_site(probe, [&](const LatticePoint& p) {
      if (p.norm2() > 0 && p.norm2() <= cutoff) offsets.push_back(p);
    });
    return offsets;
  }
}

DopedRegion place_dopants(const LatticeSpec& spec, double concentration,
                          const SpeciesMix& species_mix, std::uint64_t seed) {
  if (!(concentration > 0.0 && concentration < 1.0))
    throw PreconditionError("lattice", "concentration must lie in (0, 1)");
  validate_mix(species_mix);

  std::vector<double> weights;
  for (const auto& entry : species_mix) weights.push_back(entry.second);

  DopedRegion region;
  region.spec = spec;
  region.nominal_concentration = concentration;
  region.seed = seed;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::int64_t index = 0;
  for_each_site(spec, [&](const LatticePoint& p) {
    if (uniform(rng) < concentration) {
      const auto species = species_mix[pick(rng)].first;
      region.placements.push_back(
          Placement{Site{to_position(p, spec.lattice_constant), index, p}, species});
    }
    ++index;
  });
  region.site_count = static_cast<std::size_t>(index);
  return region;
}

std::vector<double> binomial_distribution(std::size_t n, double c) {
  std::vector<double> p(n + 1, 0.0);
  if (c <= 0.0) {
    p[0] = 1.0;
    return p;
  }
  if (c >= 1.0) {
    p[n] = 1.0;
    return p;
  }
  for (std::size_t k = 0; k <= n; ++k) {
    const double log_choose = std::lgamma(static_cast<double>(n) + 1.0) -
                              std::lgamma(static_cast<double>(k) + 1.0) -
                              std::lgamma(static_cast<double>(n - k) + 1.0);
    p[k] = std::exp(log_choose + static_cast<double>(k) * std::log(c) +
                    static_cast<double>(n - k) * std::log1p(-c));
  }
  return p;
}

NeighborStatistics neighbor_statistics(const DopedRegion& region, int n_shells) {
  if (region.placements.empty()) throw PreconditionError("lattice", "region has no dopants");
  const auto offsets = shell_offsets(n_shells);
  std::int64_t reach2 = 0;
  for (const auto& o : offsets) reach2 = std::max(reach2, o.norm2());
  const double reach = region.spec.lattice_constant / 4.0 * std::sqrt(static_cast<double>(reach2));

  std::unordered_set<std::uint64_t> occupied;
  occupied.reserve(region.placements.size() * 2);
  for (const auto& placement : region.placements) occupied.insert(pack(placement.site.point));

  NeighborStatistics stats;
  stats.n_shells = n_shells;
  stats.shell_sites = offsets.size();
  stats.concentration = region.nominal_concentration;
  stats.histogram.assign(offsets.size() + 1, 0);

  for (const auto& placement : region.placements) {
    // Only dopants whose whole neighbourhood was sampled.
    if (placement.site.position.norm() + reach > region.spec.bounding_radius + 1e-9) continue;
    const auto& p = placement.site.point;
    const int sign = p.odd_sublattice() ? -1 : 1;
    std::size_t k = 0;
    for (const auto& o : offsets) {
      const LatticePoint q{p.x + sign * o.x, p.y + sign * o.y, p.z + sign * o.z};
      if (occupied.contains(pack(q))) ++k;
    }
    ++stats.histogram[k];
    ++stats.counted_dopants;
  }

  stats.empirical.resize(stats.histogram.size(), 0.0);
  if (stats.counted_dopants > 0) {
    for (std::size_t k = 0; k < stats.histogram.size(); ++k)
      stats.empirical[k] =
          static_cast<double>(stats.histogram[k]) / static_cast<double>(stats.counted_dopants);
  }
  stats.analytic = binomial_distribution(offsets.size(), region.nominal_concentration);
  return stats;
}

}  // namespace sfg::lattice
