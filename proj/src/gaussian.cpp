#include "sfg/gaussian.hpp"

#include "sfg/units.hpp"

#include <cmath>

namespace sfg::gaussian {

namespace {

constexpr double kPi = units::kPi;
constexpr int kMaxL = 1;                 // per-function angular momentum supported
constexpr int kMaxT = 2 * kMaxL;         // Hermite index per pair and direction
constexpr int kMaxTotal = 4 * kMaxL;     // total for a quartet

// Hermite coefficients for one direction of a primitive pair:
// E[i][j][t] for i, j <= kMaxL.
struct Hermite1D {
  double e[kMaxL + 1][kMaxL + 1][kMaxT + 1] = {};
};

Hermite1D hermite_1d(double a, double b, double xa, double xb) {
  Hermite1D h;
  const double p = a + b;
  const double mu = a * b / p;
  const double xab = xa - xb;
  const double px = (a * xa + b * xb) / p;
  const double xpa = px - xa;
  const double xpb = px - xb;
  const double inv2p = 0.5 / p;
  h.e[0][0][0] = std::exp(-mu * xab * xab);
  // Raise i with j = 0, then raise j.
  for (int i = 0; i < kMaxL; ++i) {
    for (int t = 0; t <= i + 1; ++t) {
      double v = xpa * (t <= i ? h.e[i][0][t] : 0.0);
      if (t > 0) v += inv2p * h.e[i][0][t - 1];
      if (t + 1 <= i) v += (t + 1) * h.e[i][0][t + 1];
      h.e[i + 1][0][t] = v;
    }
  }
  for (int i = 0; i <= kMaxL; ++i) {
    for (int j = 0; j < kMaxL; ++j) {
      for (int t = 0; t <= i + j + 1; ++t) {
        double v = xpb * (t <= i + j ? h.e[i][j][t] : 0.0);
        if (t > 0) v += inv2p * h.e[i][j][t - 1];
        if (t + 1 <= i + j) v += (t + 1) * h.e[i][j][t + 1];
        h.e[i][j + 1][t] = v;
      }
    }
  }
  return h;
}

struct HermiteTerm {
  int t, u, v;
  double value;
};

// A primitive product a*b written as a sum of Hermite Gaussians about P.
struct PairData {
  double p = 0.0;
  Eigen::Vector3d center;
  int total_l = 0;
  std::vector<HermiteTerm> terms;  // coefficient-weighted E_t E_u E_v
};

PairData make_pair(const Primitive& a, const Primitive& b) {
  PairData d;
  d.p = a.exponent + b.exponent;
  d.center = (a.exponent * a.center + b.exponent * b.center) / d.p;
  Hermite1D h[3];
  for (int k = 0; k < 3; ++k) h[k] = hermite_1d(a.exponent, b.exponent, a.center[k], b.center[k]);
  const auto& la = a.powers;
  const auto& lb = b.powers;
  d.total_l = la[0] + la[1] + la[2] + lb[0] + lb[1] + lb[2];
  const double c = a.coefficient * b.coefficient;
  for (int t = 0; t <= la[0] + lb[0]; ++t) {
    const double ex = h[0].e[la[0]][lb[0]][t];
    if (ex == 0.0) continue;
    for (int u = 0; u <= la[1] + lb[1]; ++u) {
      const double ey = h[1].e[la[1]][lb[1]][u];
      if (ey == 0.0) continue;
      for (int v = 0; v <= la[2] + lb[2]; ++v) {
        const double ez = h[2].e[la[2]][lb[2]][v];
        if (ez == 0.0) continue;
        d.terms.push_back({t, u, v, c * ex * ey * ez});
      }
    }
  }
  return d;
}

std::vector<PairData> make_pairs(const Contracted& a, const Contracted& b) {
  std::vector<PairData> out;
  out.reserve(a.size() * b.size());
  for (const auto& pa : a)
    for (const auto& pb : b) {
      auto d = make_pair(pa, pb);
      if (!d.terms.empty()) out.push_back(std::move(d));
    }
  return out;
}

// Auxiliary Hermite Coulomb integrals R_{tuv}^0 for t+u+v <= L.
struct RTable {
  double r[kMaxTotal + 1][kMaxTotal + 1][kMaxTotal + 1] = {};
};

void hermite_coulomb(int big_l, double alpha, const Eigen::Vector3d& pc, RTable& out) {
  double f[kMaxTotal + 1];
  boys(big_l, alpha * pc.squaredNorm(), f);
  // work[n][t][u][v]
  double work[kMaxTotal + 1][kMaxTotal + 1][kMaxTotal + 1][kMaxTotal + 1];
  double scale = 1.0;
  for (int n = 0; n <= big_l; ++n) {
    work[n][0][0][0] = scale * f[n];
    scale *= -2.0 * alpha;
  }
  const double x = pc[0], y = pc[1], z = pc[2];
  for (int n = big_l - 1; n >= 0; --n) {
    const int lim = big_l - n;
    for (int t = 0; t <= lim; ++t)
      for (int u = 0; u + t <= lim; ++u)
        for (int v = 0; v + u + t <= lim; ++v) {
          if (t == 0 && u == 0 && v == 0) continue;
          double val;
          if (t > 0) {
            val = x * work[n + 1][t - 1][u][v];
            if (t > 1) val += (t - 1) * work[n + 1][t - 2][u][v];
          } else if (u > 0) {
            val = y * work[n + 1][t][u - 1][v];
            if (u > 1) val += (u - 1) * work[n + 1][t][u - 2][v];
          } else {
            val = z * work[n + 1][t][u][v - 1];
            if (v > 1) val += (v - 1) * work[n + 1][t][u][v - 2];
          }
          work[n][t][u][v] = val;
        }
  }
  for (int t = 0; t <= big_l; ++t)
    for (int u = 0; u + t <= big_l; ++u)
      for (int v = 0; v + u + t <= big_l; ++v) out.r[t][u][v] = work[0][t][u][v];
}

}  // namespace

void boys(int max_m, double t, double* out) {
  if (t < 30.0) {
    // Series for the highest order, then downward recursion.
    const double et = std::exp(-t);
    double term = 1.0 / (2 * max_m + 1);
    double sum = term;
    for (int k = 1; k < 400; ++k) {
      term *= 2.0 * t / (2 * max_m + 2 * k + 1);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    out[max_m] = et * sum;
    for (int m = max_m - 1; m >= 0; --m) out[m] = (2.0 * t * out[m + 1] + et) / (2 * m + 1);
  } else {
    const double et = std::exp(-t);
    out[0] = 0.5 * std::sqrt(kPi / t) * std::erf(std::sqrt(t));
    for (int m = 0; m < max_m; ++m) out[m + 1] = ((2 * m + 1) * out[m] - et) / (2.0 * t);
  }
}

double primitive_norm(double exponent, int angular_momentum) {
  const double base = std::pow(2.0 * exponent / kPi, 0.75);
  return angular_momentum == 0 ? base : base * std::sqrt(4.0 * exponent);
}

double overlap(const Contracted& a, const Contracted& b) {
  double sum = 0.0;
  for (const auto& d : make_pairs(a, b)) {
    for (const auto& term : d.terms)
      if (term.t == 0 && term.u == 0 && term.v == 0) sum += term.value * std::pow(kPi / d.p, 1.5);
  }
  return sum;
}

double nuclear_attraction(const Contracted& a, const Contracted& b, const Eigen::Vector3d& c) {
  double sum = 0.0;
  RTable r;
  for (const auto& d : make_pairs(a, b)) {
    hermite_coulomb(d.total_l, d.p, d.center - c, r);
    double inner = 0.0;
    for (const auto& term : d.terms) inner += term.value * r.r[term.t][term.u][term.v];
    sum += 2.0 * kPi / d.p * inner;
  }
  return sum;
}

double electron_repulsion(const Contracted& a, const Contracted& b, const Contracted& c, const Contracted& d) {
  const auto bra = make_pairs(a, b);
  const auto ket = make_pairs(c, d);
  const double prefactor = 2.0 * std::pow(kPi, 2.5);
  double sum = 0.0;
  RTable r;
  for (const auto& pb : bra) {
    for (const auto& pk : ket) {
      const double alpha = pb.p * pk.p / (pb.p + pk.p);
      hermite_coulomb(pb.total_l + pk.total_l, alpha, pb.center - pk.center, r);
      double inner = 0.0;
      for (const auto& tb : pb.terms) {
        for (const auto& tk : pk.terms) {
          const double sign = ((tk.t + tk.u + tk.v) & 1) ? -1.0 : 1.0;
          inner += sign * tb.value * tk.value * r.r[tb.t + tk.t][tb.u + tk.u][tb.v + tk.v];
        }
      }
      sum += prefactor / (pb.p * pk.p * std::sqrt(pb.p + pk.p)) * inner;
    }
  }
  return sum;
}

}  // namespace sfg::gaussian
