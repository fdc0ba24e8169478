#pragma once

// Test-only reference for two-centre hydrogenic integrals. Works with the
// exact Slater-type orbitals on a quadrature grid (prolate spheroidal for one
// electron, a Legendre multipole expansion about the midpoint for two) and
// assembles Heitler-London from explicit kinetic and potential matrix
// elements. Shares no code with the library beyond Eigen's Gauss-Legendre-free
// basics: the nodes are computed here by Newton iteration.

#include <cmath>
#include <utility>
#include <vector>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

struct Nodes {
  std::vector<double> x;
  std::vector<double> w;
};

inline Nodes legendre(int n, double lo, double hi) {
  Nodes out;
  out.x.resize(n);
  out.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    out.x[i] = 0.5 * (hi - lo) * z + 0.5 * (hi + lo);
    out.w[i] = (hi - lo) / ((1.0 - z * z) * dp * dp);
  }
  return out;
}

inline Nodes concat(const std::vector<double>& edges, int per_piece) {
  Nodes out;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const auto piece = legendre(per_piece, edges[i], edges[i + 1]);
    out.x.insert(out.x.end(), piece.x.begin(), piece.x.end());
    out.w.insert(out.w.end(), piece.w.begin(), piece.w.end());
  }
  return out;
}

enum class Kind { s1, p2 };

/// Orbital on the z axis at z = zc; a p orbital points along `sign` * z.
struct Orbital {
  Kind kind = Kind::s1;
  double a = 1.0;
  double zc = 0.0;
  double sign = 1.0;

  double value(double rho, double z) const {
    const double dz = z - zc;
    const double r = std::sqrt(rho * rho + dz * dz);
    if (kind == Kind::s1) return std::exp(-r / a) / std::sqrt(kPi * a * a * a);
    return sign * dz * std::exp(-r / (2.0 * a)) / (4.0 * std::sqrt(2.0 * kPi) * std::pow(a, 2.5));
  }
  /// Laplacian divided by the value, which stays finite for both kinds.
  double laplacian_ratio(double rho, double z) const {
    const double dz = z - zc;
    const double r = std::sqrt(rho * rho + dz * dz);
    if (kind == Kind::s1) return 1.0 / (a * a) - 2.0 / (a * r);
    return 1.0 / (4.0 * a * a) - 2.0 / (a * r);
  }
  /// <T>/(hbar^2/2m) and <1/r> of the isolated orbital.
  double kinetic_self() const { return kind == Kind::s1 ? 1.0 / (a * a) : 1.0 / (4.0 * a * a); }
  double inverse_r_self() const { return kind == Kind::s1 ? 1.0 / a : 1.0 / (4.0 * a); }
};

struct OneElectron {
  double s = 0.0;
  // Laplacian (without the -hbar^2/2m factor) and 1/r matrix elements.
  double lap_aa = 0.0, lap_bb = 0.0, lap_ab = 0.0;
  double aa_ra = 0.0, aa_rb = 0.0, bb_ra = 0.0, bb_rb = 0.0, ab_ra = 0.0, ab_rb = 0.0;
};

inline OneElectron one_electron(const Orbital& A, const Orbital& B, double R, int n = 200) {
  const auto mu = concat({1, 1.5, 3, 6, 12, 25, 60, 200}, n / 2);
  const auto nu = legendre(n, -1.0, 1.0);
  OneElectron o;
  for (std::size_t i = 0; i < mu.x.size(); ++i)
    for (std::size_t j = 0; j < nu.x.size(); ++j) {
      const double m = mu.x[i];
      const double v = nu.x[j];
      const double w = mu.w[i] * nu.w[j] * R * R * R / 8.0 * (m * m - v * v) * 2.0 * kPi;
      const double z = R / 2.0 * m * v;
      const double rho = R / 2.0 * std::sqrt(std::max((m * m - 1.0) * (1.0 - v * v), 0.0));
      const double ra = R / 2.0 * (m + v);
      const double rb = R / 2.0 * (m - v);
      const double fa = A.value(rho, z);
      const double fb = B.value(rho, z);
      o.s += w * fa * fb;
      o.lap_aa += w * fa * fa * A.laplacian_ratio(rho, z);
      o.lap_bb += w * fb * fb * B.laplacian_ratio(rho, z);
      o.lap_ab += w * fa * fb * B.laplacian_ratio(rho, z);
      o.aa_ra += w * fa * fa / ra;
      o.aa_rb += w * fa * fa / rb;
      o.bb_ra += w * fb * fb / ra;
      o.bb_rb += w * fb * fb / rb;
      o.ab_ra += w * fa * fb / ra;
      o.ab_rb += w * fa * fb / rb;
    }
  return o;
}

/// Integral of rho1(r1) rho2(r2) / r12 for axisymmetric densities given as
/// callables of (rho, z), expanded in Legendre polynomials about the origin.
template <typename D1, typename D2>
double coulomb(D1 d1, D2 d2, double R, double extent, int lmax = 60, int nr = 800, int nth = 160) {
  const auto r = concat({0.0, R / 2.0, R, 2.0 * R, R / 2.0 + extent}, nr / 4);
  const auto ct = legendre(nth, -1.0, 1.0);
  const std::size_t nrad = r.x.size();
  std::vector<double> g1(nrad * nth), g2(nrad * nth);
  for (std::size_t i = 0; i < nrad; ++i)
    for (int k = 0; k < nth; ++k) {
      const double rho = r.x[i] * std::sqrt(1.0 - ct.x[k] * ct.x[k]);
      const double z = r.x[i] * ct.x[k];
      g1[i * nth + k] = d1(rho, z);
      g2[i * nth + k] = d2(rho, z);
    }
  std::vector<double> p(nth), p_prev(nth, 1.0), p_curr(ct.x);
  double total = 0.0;
  std::vector<double> f1(nrad), f2(nrad);
  for (int l = 0; l <= lmax; ++l) {
    if (l == 0)
      p.assign(nth, 1.0);
    else if (l == 1)
      p = ct.x;
    else {
      for (int k = 0; k < nth; ++k) {
        const double next = ((2.0 * l - 1.0) * ct.x[k] * p_curr[k] - (l - 1.0) * p_prev[k]) / l;
        p_prev[k] = p_curr[k];
        p_curr[k] = next;
      }
      p = p_curr;
    }
    for (std::size_t i = 0; i < nrad; ++i) {
      double c1 = 0.0, c2 = 0.0;
      for (int k = 0; k < nth; ++k) {
        c1 += g1[i * nth + k] * p[k] * ct.w[k];
        c2 += g2[i * nth + k] * p[k] * ct.w[k];
      }
      const double scale = (2.0 * l + 1.0) / 2.0 * r.x[i] * r.x[i] * r.w[i];
      f1[i] = c1 * scale;
      f2[i] = c2 * scale;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < nrad; ++i) {
      if (f1[i] == 0.0) continue;
      double row = 0.0;
      for (std::size_t j = 0; j < nrad; ++j) {
        const double lo = std::min(r.x[i], r.x[j]);
        const double hi = std::max(r.x[i], r.x[j]);
        row += std::pow(lo / hi, l) / hi * f2[j];
      }
      s += f1[i] * row;
    }
    total += s * (4.0 * kPi) * (4.0 * kPi) / ((2.0 * l + 1.0) * (2.0 * l + 1.0));
  }
  return total;
}

struct Result {
  double s = 0.0;
  double transfer = 0.0;  // meV
  double j = 0.0;         // E_T - E_S, meV
};

/// Two electrons on centres A (z = -R/2) and B (z = +R/2). `u` = e^2/eps
/// (meV A), `host` = host Bohr radius setting hbar^2/2m = u host / 2. Each
/// centre's charge reproduces the given binding of its own level.
inline Result heitler_london(Kind ka, double a_a, double bind_a, Kind kb, double a_b, double bind_b, double R,
                             double u, double host, bool two_electron = true) {
  const Orbital A{ka, a_a, -R / 2.0, 1.0};
  const Orbital B{kb, a_b, R / 2.0, -1.0};
  const double kin = u * host / 2.0;
  // <T> - u Z <1/r> = -binding
  const double za = (kin * A.kinetic_self() + bind_a) / (u * A.inverse_r_self());
  const double zb = (kin * B.kinetic_self() + bind_b) / (u * B.inverse_r_self());
  const auto o = one_electron(A, B, R);
  const double h_aa = -kin * o.lap_aa - u * (za * o.aa_ra + zb * o.aa_rb);
  const double h_bb = -kin * o.lap_bb - u * (za * o.bb_ra + zb * o.bb_rb);
  const double h_ab = -kin * o.lap_ab - u * (za * o.ab_ra + zb * o.ab_rb);
  Result res;
  res.s = o.s;
  res.transfer = (h_ab - 0.5 * o.s * (h_aa + h_bb)) / (1.0 - o.s * o.s);
  if (!two_electron) return res;
  const double extent = 60.0 * std::max(ka == Kind::p2 ? 2.0 * a_a : a_a, kb == Kind::p2 ? 2.0 * a_b : a_b);
  auto da = [&](double rho, double z) { const double v = A.value(rho, z); return v * v; };
  auto db = [&](double rho, double z) { const double v = B.value(rho, z); return v * v; };
  auto dab = [&](double rho, double z) { return A.value(rho, z) * B.value(rho, z); };
  const double aabb = coulomb(da, db, R, extent);
  const double abab = coulomb(dab, dab, R, extent);
  const double h11 = h_aa + h_bb + u * aabb;
  const double h12 = 2.0 * o.s * h_ab + u * abab;
  const double s2 = o.s * o.s;
  res.j = (2.0 * s2 * h11 - 2.0 * h12) / (1.0 - s2 * s2);
  return res;
}

}  // namespace oracle
