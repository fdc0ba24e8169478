#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sfg::lattice {

/// Conventional cubic diamond lattice, sphere of `bounding_radius` centred on
/// an atom at the origin.
struct LatticeSpec {
  enum class Origin { atom_centered };

  double lattice_constant = 3.567;  // angstrom
  double bounding_radius = 0.0;     // angstrom
  Origin origin = Origin::atom_centered;
};

/// Integer lattice coordinates in units of a/4. Diamond sites are the points
/// whose coordinates share parity, with x+y+z = 0 (mod 4) when even and
/// x+y+z = 3 (mod 4) when odd.
struct LatticePoint {
  int x = 0;
  int y = 0;
  int z = 0;

  std::int64_t norm2() const {
    return std::int64_t{x} * x + std::int64_t{y} * y + std::int64_t{z} * z;
  }
  bool odd_sublattice() const { return (x & 1) != 0; }
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

struct Site {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();  // angstrom
  std::int64_t index = 0;
  LatticePoint point;
};

struct Shell {
  double radius = 0.0;           // angstrom
  std::int64_t squared_units = 0;  // |r|^2 in (a/4)^2
  std::size_t site_count = 0;
};

struct ShellTable {
  std::vector<Shell> shells;

  std::size_t total_sites() const;
};

using SpeciesMix = std::vector<std::pair<std::string, double>>;

struct Placement {
  Site site;
  std::string species;
};

struct DopedRegion {
  LatticeSpec spec;
  std::vector<Placement> placements;
  double nominal_concentration = 0.0;
  std::uint64_t seed = 0;
  std::size_t site_count = 0;

  /// Realized atomic fraction (placements / enumerated sites).
  double concentration() const;
};

struct NeighborStatistics {
  int n_shells = 0;
  std::size_t shell_sites = 0;  // sites inside the first n_shells
  std::size_t counted_dopants = 0;  // dopants whose neighbourhood lies inside the region
  double concentration = 0.0;
  std::vector<std::size_t> histogram;  // index k = number of other dopants
  std::vector<double> empirical;
  std::vector<double> analytic;

  /// Binomial standard error of the empirical frequency of bin k.
  double sigma(std::size_t k) const;
};

bool is_diamond_site(const LatticePoint& p);

Eigen::Vector3d to_position(const LatticePoint& p, double lattice_constant);

/// Calls fn(point) for every site with |r| <= bounding_radius, in
/// lexicographic (x, y, z) order.
template <typename Fn>
void for_each_site(const LatticeSpec& spec, Fn&& fn);

/// All sites within the bounding sphere, origin included, lexicographic order.
std::vector<Site> enumerate_sites(const LatticeSpec& spec);

/// Number of sites within the sphere without materializing them.
std::size_t count_sites(const LatticeSpec& spec, bool include_center = true);

/// rho * 4/3 pi r^3 with rho = 8 / a^3.
double continuum_site_estimate(double radius, double lattice_constant);

ShellTable shell_sizes(const LatticeSpec& spec, int n_shells);

/// Offsets (a/4 units) to every site of the first n_shells around an
/// even-sublattice atom; negate for odd-sublattice atoms.
std::vector<LatticePoint> shell_offsets(int n_shells);

DopedRegion place_dopants(const LatticeSpec& spec, double concentration,
                          const SpeciesMix& species_mix, std::uint64_t seed);

NeighborStatistics neighbor_statistics(const DopedRegion& region, int n_shells);

/// P(k of n sites occupied) for independent occupancy c.
std::vector<double> binomial_distribution(std::size_t n, double c);

// ---------------------------------------------------------------------------

namespace detail {
void validate(const LatticeSpec& spec);
std::int64_t squared_limit(const LatticeSpec& spec);
}  // namespace detail

template <typename Fn>
void for_each_site(const LatticeSpec& spec, Fn&& fn) {
  detail::validate(spec);
  const std::int64_t limit = detail::squared_limit(spec);
  int m = 0;
  while (std::int64_t{m + 1} * (m + 1) <= limit) ++m;
  for (int x = -m; x <= m; ++x) {
    const std::int64_t rx = limit - std::int64_t{x} * x;
    const int parity = x & 1;
    for (int y = -m; y <= m; ++y) {
      if ((y & 1) != parity) continue;
      const std::int64_t ry = rx - std::int64_t{y} * y;
      if (ry < 0) continue;
      int zmax = 0;
      while (std::int64_t{zmax + 1} * (zmax + 1) <= ry) ++zmax;
      // x + y + z must hit the sublattice residue mod 4.
      const int want = parity ? 3 : 0;
      int z = -zmax;
      while ((((x + y + z) % 4) + 4) % 4 != want || (z & 1) != parity) {
        ++z;
        if (z > zmax) break;
      }
      for (; z <= zmax; z += 4) fn(LatticePoint{x, y, z});
    }
  }
}

}  // namespace sfg::lattice
