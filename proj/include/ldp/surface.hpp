#pragma once

#include "ldp/config.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace ldp {

/// Boundary divisor: EpsRational coefficients in [0,1] on kept curves.
using Boundary = std::map<int, EpsRational>;

/// Least nonzero coefficient; 1 when the boundary is empty.
inline EpsRational min_nonzero(const Boundary& b) {
  EpsRational m(Rational(1));
  bool seen = false;
  for (const auto& [c, v] : b) {
    if (v.is_zero()) continue;
    if (!seen || v < m) m = v;
    seen = true;
  }
  return seen ? m : EpsRational(Rational(1));
}

/// One singular point of the contracted surface: recognized dual graph and
/// the smooth-model curves realizing it (layout order of the graph).
struct SurfacePoint {
  SingGraph graph;
  std::vector<int> curveOf;
  DiscrepancyData disc;
};

/// A normal surface S presented by its minimal resolution: the configuration
/// plus the set of curves contracted by S~ -> S.
class SurfaceModel {
 public:
  Configuration cfg;
  std::vector<char> exceptional;  // per curve
  std::vector<SurfacePoint> sings;
  std::vector<int> singOf;  // curve -> singular point index, -1 if kept
  std::vector<int> posOf;   // curve -> layout position within its point

  bool is_exceptional(int c) const { return exceptional[c] != 0; }

  /// Discrepancy coefficient e(E, K_S) of an exceptional curve.
  const Rational& disc_coeff(int c) const {
    static const Rational zero(0);
    if (singOf[c] < 0) return zero;
    return sings[singOf[c]].disc.e[posOf[c]];
  }

  int curve_index(const std::string& name) const { return cfg.curve_index(name); }
  int require_curve(const std::string& name) const { return cfg.require_curve(name); }
};

enum class ContractPolicy { KNonNegative, Explicit };

namespace detail {

/// Recognizes a connected component of exceptional curves as a chain or a
/// star, producing the graph layout order.
inline SurfacePoint recognize_component(const Configuration& cfg, const std::vector<int>& comp) {
  auto describe = [&](int c) { return cfg.curves[c].name; };
  for (int c : comp) {
    if (cfg.curves[c].selfInt > -2)
      fail(ErrorKind::UnrecognizedGraph,
           "exceptional curve " + describe(c) + " has self-intersection > -2");
    if (cfg.curves[c].selfInt + cfg.curves[c].kDeg != -2)
      fail(ErrorKind::UnrecognizedGraph,
           "exceptional curve " + describe(c) + " is not a smooth rational curve");
  }
  std::map<int, std::vector<int>> adj;
  for (std::size_t i = 0; i < comp.size(); ++i)
    for (std::size_t j = i + 1; j < comp.size(); ++j) {
      long long v = cfg.inter[comp[i]][comp[j]];
      if (v == 0) continue;
      if (v > 1)
        fail(ErrorKind::UnrecognizedGraph, "exceptional curves " + describe(comp[i]) + "," +
                                               describe(comp[j]) + " meet more than once");
      adj[comp[i]].push_back(comp[j]);
      adj[comp[j]].push_back(comp[i]);
    }
  long long edges = 0;
  for (const auto& [c, ns] : adj) edges += static_cast<long long>(ns.size());
  edges /= 2;
  if (edges != static_cast<long long>(comp.size()) - 1)
    fail(ErrorKind::UnrecognizedGraph, "exceptional component contains a cycle");

  int center = -1;
  for (int c : comp) {
    std::size_t deg = adj[c].size();
    if (deg > 3) fail(ErrorKind::UnrecognizedGraph, "vertex of degree > 3 at " + describe(c));
    if (deg == 3) {
      if (center >= 0) fail(ErrorKind::UnrecognizedGraph, "two branch vertices in one component");
      center = c;
    }
  }

  SurfacePoint sp;
  if (center < 0) {
    // chain: walk from an end
    int start = comp[0];
    for (int c : comp)
      if (adj[c].size() <= 1) {
        start = c;
        break;
      }
    std::vector<int> order{start};
    int prev = -1, cur = start;
    while (true) {
      int next = -1;
      for (int n : adj[cur])
        if (n != prev) next = n;
      if (next < 0) break;
      order.push_back(next);
      prev = cur;
      cur = next;
    }
    if (order.size() != comp.size())
      fail(ErrorKind::UnrecognizedGraph, "disconnected walk in chain recognition");
    std::vector<int> w;
    for (int c : order) w.push_back(static_cast<int>(-cfg.curves[c].selfInt));
    sp.graph = Chain(std::move(w));
    sp.curveOf = std::move(order);
  } else {
    std::vector<Chain> branches;
    std::vector<int> order{center};
    for (int first : adj[center]) {
      std::vector<int> branch{first};
      int prev = center, cur = first;
      while (true) {
        int next = -1;
        for (int n : adj[cur])
          if (n != prev) next = n;
        if (next < 0) break;
        branch.push_back(next);
        prev = cur;
        cur = next;
      }
      std::vector<int> w;
      for (int c : branch) w.push_back(static_cast<int>(-cfg.curves[c].selfInt));
      branches.push_back(Chain(std::move(w), true));
      order.insert(order.end(), branch.begin(), branch.end());
    }
    if (order.size() != comp.size())
      fail(ErrorKind::UnrecognizedGraph, "branch walk missed curves");
    sp.graph = Star(static_cast<int>(-cfg.curves[center].selfInt), branches[0], branches[1],
                    branches[2]);
    sp.curveOf = std::move(order);
  }
  return sp;
}

}  // namespace detail

/// Contracts a curve subset to a normal surface: components are recognized
/// as chains or stars, checked negative definite and log terminal.
inline SurfaceModel contract_to_surface(Configuration cfg,
                                        ContractPolicy policy = ContractPolicy::KNonNegative,
                                        const std::vector<int>& subset = {}) {
  SurfaceModel s;
  s.cfg = std::move(cfg);
  const auto& c = s.cfg;
  s.exceptional.assign(c.curves.size(), 0);
  if (policy == ContractPolicy::KNonNegative) {
    for (std::size_t i = 0; i < c.curves.size(); ++i)
      if (c.curves[i].kDeg >= 0) s.exceptional[i] = 1;
  } else {
    for (int i : subset) s.exceptional[i] = 1;
  }

  // connected components of the exceptional set
  std::vector<int> compId(c.curves.size(), -1);
  std::vector<std::vector<int>> comps;
  for (std::size_t i = 0; i < c.curves.size(); ++i) {
    if (!s.exceptional[i] || compId[i] >= 0) continue;
    std::vector<int> comp;
    std::vector<int> stack{static_cast<int>(i)};
    compId[i] = static_cast<int>(comps.size());
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (std::size_t j = 0; j < c.curves.size(); ++j)
        if (s.exceptional[j] && compId[j] < 0 && c.inter[v][j] > 0) {
          compId[j] = compId[i];
          stack.push_back(static_cast<int>(j));
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }

  s.singOf.assign(c.curves.size(), -1);
  s.posOf.assign(c.curves.size(), -1);
  for (const auto& comp : comps) {
    SurfacePoint sp = detail::recognize_component(c, comp);
    if (!is_negative_definite(intersection_matrix(sp.graph)))
      fail(ErrorKind::NotNegativeDefinite, "exceptional lattice not negative definite");
    sp.disc = discrepancies(sp.graph);
    for (const auto& e : sp.disc.e)
      if (e >= Rational(1) || e.sign() < 0)
        fail(ErrorKind::NotLogTerminal, "discrepancy outside [0,1)");
    int id = static_cast<int>(s.sings.size());
    for (std::size_t pos = 0; pos < sp.curveOf.size(); ++pos) {
      s.singOf[sp.curveOf[pos]] = id;
      s.posOf[sp.curveOf[pos]] = static_cast<int>(pos);
    }
    s.sings.push_back(std::move(sp));
  }
  return s;
}

/// Exceptional-trivial pullback coefficients of a kept curve: the vector c
/// with sum_i c_i E_i . E_j = -(target . E_j) over the whole exceptional set.
inline std::vector<Rational> mumford_pullback(const SurfaceModel& s, int target) {
  std::vector<Rational> out(s.cfg.curves.size(), Rational(0));
  for (const auto& sp : s.sings) {
    RatMatrix m = intersection_matrix(sp.graph);
    std::vector<Rational> rhs(sp.curveOf.size());
    bool hit = false;
    for (std::size_t j = 0; j < sp.curveOf.size(); ++j) {
      rhs[j] = Rational(-s.cfg.inter[target][sp.curveOf[j]]);
      hit = hit || !rhs[j].is_zero();
    }
    if (!hit) continue;
    auto x = solve(m, std::move(rhs));
    for (std::size_t j = 0; j < sp.curveOf.size(); ++j) out[sp.curveOf[j]] = x[j];
  }
  return out;
}

/// Mumford Q-intersection of two kept curves on S.
inline Rational q_intersection(const SurfaceModel& s, int a, int b) {
  Rational v(a == b ? s.cfg.curves[a].selfInt : s.cfg.inter[a][b]);
  auto c = mumford_pullback(s, a);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!c[i].is_zero()) v += c[i] * Rational(s.cfg.inter[i][b]);
  return v;
}

inline Rational q_self(const SurfaceModel& s, int a) { return q_intersection(s, a, a); }

/// K_S . C for a kept curve C.
inline Rational k_dot(const SurfaceModel& s, int a) {
  Rational v(s.cfg.curves[a].kDeg);
  for (std::size_t i = 0; i < s.cfg.curves.size(); ++i)
    if (s.exceptional[i] && s.cfg.inter[a][i] != 0)
      v += s.disc_coeff(static_cast<int>(i)) * Rational(s.cfg.inter[a][i]);
  return v;
}

/// K_S^2 = K_{S~}^2 + sum e_i K.E_i.
inline Rational k_squared(const SurfaceModel& s) {
  Rational v(s.cfg.kSquaredSmooth);
  for (std::size_t i = 0; i < s.cfg.curves.size(); ++i)
    if (s.exceptional[i])
      v += s.disc_coeff(static_cast<int>(i)) * Rational(s.cfg.curves[i].kDeg);
  return v;
}

/// A local branch of a kept curve at a singular point, described by which
/// exceptional curves its strict transform meets (each normally).
struct Branch {
  int curve = -1;
  int sing = -1;
  std::vector<int> meets;  // exceptional curve indices
};

/// All branches of a kept curve at singular points: one branch per tracked
/// point carrying exceptional members, plus one per free transverse unit.
inline std::vector<Branch> branches_at_singular_points(const SurfaceModel& s, int curve) {
  std::vector<Branch> out;
  std::vector<long long> localized(s.cfg.curves.size(), 0);
  for (const auto& p : s.cfg.points) {
    if (!p.alive || !p.has_curve(curve)) continue;
    // one branch per germ of the curve at this point
    for (std::size_t gi = 0; gi < p.members.size(); ++gi) {
      if (p.members[gi].curve != curve) continue;
      Branch br;
      br.curve = curve;
      for (std::size_t j = 0; j < p.members.size(); ++j) {
        if (j == gi) continue;
        int other = p.members[j].curve;
        if (!s.exceptional[other] || p.contact[gi][j] <= 0) continue;
        for (int k = 0; k < p.contact[gi][j]; ++k) br.meets.push_back(other);
        localized[other] += p.contact[gi][j];
      }
      if (br.meets.empty()) continue;
      br.sing = s.singOf[br.meets.front()];
      for (int m : br.meets)
        if (s.singOf[m] != br.sing)
          fail(ErrorKind::MultiplePoints, "branch spans several singular points");
      out.push_back(std::move(br));
    }
  }
  for (std::size_t e = 0; e < s.cfg.curves.size(); ++e) {
    if (!s.exceptional[e]) continue;
    long long freeUnits = s.cfg.inter[curve][e] - localized[e];
    for (long long u = 0; u < freeUnits; ++u) {
      Branch br;
      br.curve = curve;
      br.sing = s.singOf[e];
      br.meets = {static_cast<int>(e)};
      out.push_back(std::move(br));
    }
  }
  return out;
}

/// Local Cartier index of a branch: lcm of the denominators of the Mumford
/// pullback coefficients over its singular point.
inline BigInt branch_index(const SurfaceModel& s, const Branch& br) {
  if (br.sing < 0) return 1;
  const SurfacePoint& sp = s.sings[br.sing];
  RatMatrix m = intersection_matrix(sp.graph);
  std::vector<Rational> rhs(sp.curveOf.size(), Rational(0));
  for (int e : br.meets) rhs[s.posOf[e]] -= Rational(1);
  auto x = solve(m, std::move(rhs));
  BigInt l(1);
  for (const auto& v : x) l = lcm(l, v.den());
  return l;
}

/// Coefficient of every exceptional curve for K_S + Delta (log pullback to
/// the full minimal resolution); layout follows sings/curveOf.
inline std::vector<EpsRational> boundary_coefficients(const SurfaceModel& s, const Boundary& d) {
  std::vector<EpsRational> out(s.cfg.curves.size());
  for (const auto& sp : s.sings) {
    RatMatrix m = intersection_matrix(sp.graph);
    std::vector<EpsRational> rhs(sp.curveOf.size());
    for (std::size_t j = 0; j < sp.curveOf.size(); ++j) {
      int ej = sp.curveOf[j];
      EpsRational r(Rational(2 + s.cfg.curves[ej].selfInt));
      for (const auto& [c, coef] : d)
        if (s.cfg.inter[c][ej] != 0) r -= coef * EpsRational(Rational(s.cfg.inter[c][ej]));
      rhs[j] = r;
    }
    auto x = solve_eps(m, rhs);
    for (std::size_t j = 0; j < sp.curveOf.size(); ++j) out[sp.curveOf[j]] = x[j];
  }
  return out;
}

/// Extracts one exceptional divisor: returns the model T whose exceptional
/// set drops `e`, together with the log pullback Gamma of Delta.
inline std::pair<SurfaceModel, Boundary> extract_divisor(const SurfaceModel& s, int e,
                                                         const Boundary& delta) {
  if (!s.is_exceptional(e)) fail(ErrorKind::Internal, "extract: curve is not exceptional");
  auto coeffs = boundary_coefficients(s, delta);
  std::vector<int> subset;
  for (std::size_t i = 0; i < s.cfg.curves.size(); ++i)
    if (s.exceptional[i] && static_cast<int>(i) != e) subset.push_back(static_cast<int>(i));
  SurfaceModel t = contract_to_surface(s.cfg, ContractPolicy::Explicit, subset);
  Boundary gamma = delta;
  gamma[e] = coeffs[e];
  return {std::move(t), std::move(gamma)};
}

}  // namespace ldp
