#pragma once

#include "ldp/surface.hpp"

#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace ldp {

/// Riemann-Roch bookkeeping over the non-Du-Val points.
struct RRStats {
  int n = 0;                  // number of non-Du-Val points
  long long kSquaredTilde = 0;
  long long w = 0;            // sum of the weights w(t)
  Rational Gamma;             // sum of Gamma(t)
  struct PerPoint {
    Rational gamma;  // Gamma(t) = sum (1-e_j)(w_j-2)
    Rational delta;  // delta(t) = sum e_j (w_j-2)
    long long weight = 0;
  };
  std::vector<PerPoint> perPoint;
};

/// chi(-K_{Sbar} - D) = 1 - n + K_{S~}^2 + sum w(t).
inline std::pair<Rational, RRStats> rr_chi(const SurfaceModel& s) {
  RRStats st;
  st.kSquaredTilde = s.cfg.kSquaredSmooth;
  for (const auto& sp : s.sings) {
    bool duVal = true;
    for (int c : sp.curveOf) duVal = duVal && s.cfg.curves[c].selfInt == -2;
    if (duVal) continue;
    RRStats::PerPoint pp;
    for (std::size_t pos = 0; pos < sp.curveOf.size(); ++pos) {
      long long wj = -s.cfg.curves[sp.curveOf[pos]].selfInt - 2;
      const Rational& e = sp.disc.e[pos];
      pp.weight += wj;
      pp.gamma += (Rational(1) - e) * Rational(wj);
      pp.delta += e * Rational(wj);
    }
    st.n += 1;
    st.w += pp.weight;
    st.Gamma += pp.gamma;
    st.perPoint.push_back(std::move(pp));
  }
  Rational chi = Rational(1 - st.n + st.kSquaredTilde + st.w);
  return {chi, st};
}

/// Sufficient certificates for the existence of a tiger; nullopt means
/// inconclusive, never a nonexistence claim.
inline std::optional<std::string> tiger_certificate(const SurfaceModel& s) {
  if (k_squared(s) > Rational(4)) return "K^2 > 4 (7.1)";
  auto [chi, st] = rr_chi(s);
  if (st.n <= 1) return "at most one non-Du-Val point (10.4)";
  if (st.n == 2) {
    Rational e(0);
    for (const auto& sp : s.sings) e = std::max(e, sp.disc.coefficient);
    if (e <= rat(1, 2)) return "n = 2 and e(S) <= 1/2 (10.4)";
  }
  return std::nullopt;
}

/// Bogomolov bound (9.2): sum (r-1)/r over points off B is at most
/// e_top(S) - e_top(B).
inline bool bogomolov_check(const std::vector<long long>& indices, long long eTopS,
                            long long eTopB) {
  Rational sum;
  for (long long r : indices) {
    if (r < 2) fail(ErrorKind::Parse, "singularity index must be >= 2");
    sum += rat(r - 1, r);
  }
  return sum <= Rational(eTopS - eTopB);
}

/// The rank-one rational convenience form: e_top(S) = 3, and for connected
/// genus-0 B with s components e_top(B) = 1 + s (0 when B is empty).
inline bool bogomolov_rational(const std::vector<long long>& indices, int components) {
  return bogomolov_check(indices, 3, components == 0 ? 0 : 1 + components);
}

/// Criterion (6.5): -K.Z >= 1/x + 1/y for the branch indices x, y.
inline bool uniruled_criterion(const Rational& minusKz, const BigInt& x, const BigInt& y) {
  if (x < 1 || y < 1) fail(ErrorKind::Parse, "branch indices must be positive");
  return minusKz >= Rational(1, x) + Rational(1, y);
}

/// Necessary flush conditions at a smooth point of the boundary (8.3.7).
struct SmoothPointKind {
  enum class Tag { Mult, Node, Cusp } tag;
  int param = 0;  // multiplicity M, or genus g
  Rational a, b;  // branch coefficients (b unused for Mult/Cusp)
};

inline SmoothPointKind mult_point(int m, Rational coefficientMin) {
  return {SmoothPointKind::Tag::Mult, m, std::move(coefficientMin), Rational(0)};
}
inline SmoothPointKind node_point(int g, Rational a, Rational b) {
  return {SmoothPointKind::Tag::Node, g, std::move(a), std::move(b)};
}
inline SmoothPointKind cusp_point(int g, Rational a) {
  return {SmoothPointKind::Tag::Cusp, g, std::move(a), Rational(0)};
}

inline bool smooth_point_flush_bound(const SmoothPointKind& k) {
  switch (k.tag) {
    case SmoothPointKind::Tag::Mult:
      // (M - 1) m < 1
      return Rational(k.param - 1) * k.a < Rational(1);
    case SmoothPointKind::Tag::Node:
      // genus >= 2 node: 2 max + min < 2
      return Rational(2) * std::max(k.a, k.b) + std::min(k.a, k.b) < Rational(2);
    case SmoothPointKind::Tag::Cusp:
      // genus 1: a < 4/5; higher genus: a < g/(2g-1)
      if (k.param == 1) return k.a < rat(4, 5);
      return k.a < rat(k.param, 2 * k.param - 1);
  }
  return false;
}

/// klt certificate at a normal crossing (21.2.1): max(a,b) + m_p(G) < 1.
inline bool local_klt_bound(const Rational& a, const Rational& b, const Rational& mp) {
  if (a.sign() < 0 || b.sign() < 0) fail(ErrorKind::Parse, "coefficients must be >= 0");
  return std::max(a, b) + mp < Rational(1);
}

/// K^2 of the rank-one toric surface with singularity indices p, q, r.
inline Rational toric_k2(long long p, long long q, long long r) {
  if (p < 1 || q < 1 || r < 1) fail(ErrorKind::Parse, "indices must be >= 1");
  Rational s(p + q + r);
  return s * s / Rational(BigInt(p) * q * r);
}

/// One member of the density experiment: fan (1,0), (1,r), (-c,q) with
/// gcd(c,q) = 1, giving indices (rc - q, q, r).
struct ToricFamily {
  long long r = 0, c = 0, q = 0;
  long long p = 0;  // rc - q
  Rational kSquared;
};

/// Enumerates coprime (c, q) with q <= capQ and p = rc - q > 0, walking q
/// downward, keeping K^2 <= k2Cap, and stopping after `budget` values; the
/// caps make the call total (c is unbounded in the spec's description).
inline std::vector<ToricFamily> toric_density_sample(long long r, long long capQ,
                                                     const Rational& k2Cap = Rational(25),
                                                     std::size_t budget = 250000) {
  if (r < 1 || capQ < 1) fail(ErrorKind::Parse, "r and capQ must be >= 1");
  std::vector<ToricFamily> out;
  for (long long q = capQ; q >= 1 && out.size() < budget; --q) {
    for (long long c = q / r + 1;; ++c) {
      long long p = r * c - q;
      if (p <= 0) continue;
      Rational k2 = toric_k2(p, q, r);
      if (k2 > k2Cap) {
        if (p > q + r) break;  // K^2 grows with c from here on
        continue;
      }
      if (std::gcd(c, q) != 1) continue;
      out.push_back({r, c, q, p, k2});
      if (out.size() >= budget) break;
    }
  }
  return out;
}

}  // namespace ldp
