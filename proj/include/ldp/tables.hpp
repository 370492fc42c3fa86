#pragma once

#include "ldp/flush.hpp"
#include "ldp/surface.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ldp {

/// One row of the contraction classification: the configuration type and
/// the pi-triviality constraint cCoef c + dCoef d = rhs (integral, coprime).
/// For single-branch types the solved value of c is included.
struct ContractionRow {
  std::string family;  // "node" or "cusp"
  std::string type;
  int g = 1;
  int r = 1;  // only for the node (II,x^{r-1}) series
  Rational cCoef, dCoef, rhs;
  std::optional<Rational> cValue;
  Chain sigmaChain{{2}};  // placeholder; the singularities live in the model

  std::string constraint() const {
    std::string s = cCoef.str() + " c";
    if (!dCoef.is_zero()) s += " + " + dCoef.str() + " d";
    return s + " = " + rhs.str();
  }
};

namespace detail {

struct LocalModel {
  Configuration cfg;
  int X = -1, Y = -1;  // boundary branches (Y may be absent)
  int sigma = -1;      // the -1 curve to be contracted
  std::vector<int> created;
};

/// Blows up following a germ of `curve`: center = the tracked point where
/// the curve currently sits over the previous center.
inline int blow_following(Configuration& cfg, int pointId, int curve) {
  const auto& mem = cfg.points[pointId].members;
  int follow = -1;
  for (std::size_t i = 0; i < mem.size(); ++i)
    if (mem[i].curve == curve) follow = static_cast<int>(i);
  std::map<int, int> landing;
  int e = cfg.blow_up(pointId, &landing);
  if (follow >= 0 && landing.count(follow)) return landing[follow];
  return -1;
}

inline LocalModel node_model(int g, const std::string& type, int r) {
  LocalModel m;
  m.cfg = Configuration::local_germ();
  m.X = m.cfg.add_abstract_curve("X");
  m.Y = m.cfg.add_abstract_curve("Y");
  m.cfg.inter[m.X][m.Y] = m.cfg.inter[m.Y][m.X] = g;
  m.cfg.add_point("q", {GermAt{m.X}, GermAt{m.Y}}, {{0, 1, g}});
  auto blow_at_xy = [&]() {
    int p = m.cfg.meet_point(m.X, m.Y);
    m.created.push_back(m.cfg.blow_up(p));
    m.cfg.curves[m.created.back()].name = "e" + std::to_string(m.created.size());
  };
  int steps = 0;
  if (type == "0") steps = g - 1;
  if (type == "I") steps = g;
  if (type == "II" || type == "II,x") steps = g;
  for (int i = 0; i < steps; ++i) blow_at_xy();
  if (type == "II" || type == "II,x") {
    int extra = (type == "II") ? 1 : r;
    for (int i = 0; i < extra; ++i) {
      int p = m.cfg.meet_point(m.X, m.created.back());
      m.created.push_back(m.cfg.blow_up(p));
      m.cfg.curves[m.created.back()].name = "e" + std::to_string(m.created.size());
    }
  }
  m.sigma = m.created.back();
  return m;
}

inline LocalModel cusp_model(int g, const std::string& type) {
  LocalModel m;
  m.cfg = Configuration::local_germ();
  m.X = m.cfg.add_abstract_curve("X");
  int p = m.cfg.add_point("q", {GermAt{m.X, g}});
  // desingularise the cusp: g blow-ups following X
  for (int i = 0; i < g; ++i) {
    std::map<int, int> landing;
    int follow = -1;
    for (std::size_t k = 0; k < m.cfg.points[p].members.size(); ++k)
      if (m.cfg.points[p].members[k].curve == m.X) follow = static_cast<int>(k);
    m.created.push_back(m.cfg.blow_up(p, &landing));
    m.cfg.curves[m.created.back()].name = "e" + std::to_string(m.created.size());
    p = landing.at(follow);
  }
  auto blow_meet = [&](int a, int b) {
    int pt = m.cfg.meet_point(a, b);
    m.created.push_back(m.cfg.blow_up(pt));
    m.cfg.curves[m.created.back()].name = "e" + std::to_string(m.created.size());
  };
  int eI = m.created.back();  // the configuration-I curve, X tangent to it
  if (type == "I") {
    m.sigma = eI;
    return m;
  }
  blow_meet(m.X, eI);  // II
  int eII = m.created.back();
  if (type == "II") {
    m.sigma = eII;
    return m;
  }
  blow_meet(m.X, eII);  // III: the triple point X, eI, eII
  int eIII = m.created.back();
  if (type == "III") {
    m.sigma = eIII;
    return m;
  }
  if (type == "u" || type == "u;n") {
    blow_meet(eIII, eI);
    if (type == "u;n") blow_meet(m.created.back(), eIII);
  } else if (type == "w") {
    blow_meet(eIII, eII);
  } else if (type.rfind("v", 0) == 0) {
    blow_meet(m.X, eIII);  // v
    if (type == "v;n") blow_meet(m.X, m.created.back());
    if (type == "v;n2") {
      blow_meet(m.X, m.created.back());
      blow_meet(m.X, m.created.back());
    }
    if (type == "v;f") blow_meet(m.created.back(), eIII);
    if (type == "v;f2") {
      blow_meet(m.created.back(), eIII);
      blow_meet(m.created.back(), eIII);
    }
  }
  m.sigma = m.created.back();
  return m;
}

inline ContractionRow solve_row(LocalModel m, const std::string& family,
                                const std::string& type, int g, int r) {
  std::vector<int> exceptional;
  for (int c : m.created)
    if (c != m.sigma) exceptional.push_back(c);
  SurfaceModel t = contract_to_surface(m.cfg, ContractPolicy::Explicit, exceptional);
  int sigma = m.sigma;
  ContractionRow row;
  row.family = family;
  row.type = type;
  row.g = g;
  row.r = r;
  row.cCoef = q_intersection(t, m.X, sigma);
  row.dCoef = m.Y >= 0 ? q_intersection(t, m.Y, sigma) : Rational(0);
  row.rhs = -k_dot(t, sigma);
  // normalize to coprime integers
  BigInt l = lcm(row.cCoef.den(), lcm(row.dCoef.den(), row.rhs.den()));
  row.cCoef *= Rational(l);
  row.dCoef *= Rational(l);
  row.rhs *= Rational(l);
  BigInt gg = boost::multiprecision::gcd(row.cCoef.num(),
                                         boost::multiprecision::gcd(row.dCoef.num(), row.rhs.num()));
  if (gg > 1) {
    row.cCoef /= Rational(gg);
    row.dCoef /= Rational(gg);
    row.rhs /= Rational(gg);
  }
  if (row.dCoef.is_zero() && !row.cCoef.is_zero()) row.cValue = row.rhs / row.cCoef;
  return row;
}

}  // namespace detail

/// Computed replicas of the node table (11.1.1) and the cusp table
/// (11.2.1): for every configuration type the local model is built by
/// explicit blow-ups and c (and d) solved from pi-triviality.
inline std::vector<ContractionRow> contraction_tables() {
  std::vector<ContractionRow> rows;
  for (int g = 2; g <= 5; ++g)
    rows.push_back(detail::solve_row(detail::node_model(g, "0", 0), "node", "0", g, 0));
  for (int g = 1; g <= 5; ++g)
    rows.push_back(detail::solve_row(detail::node_model(g, "I", 0), "node", "I", g, 0));
  for (int g = 1; g <= 5; ++g)
    rows.push_back(detail::solve_row(detail::node_model(g, "II", 0), "node", "II", g, 0));
  for (int r = 1; r <= 5; ++r)
    rows.push_back(detail::solve_row(detail::node_model(1, "II,x", r), "node",
                                     "II,x^" + std::to_string(r), 1, r));
  for (int g = 1; g <= 3; ++g) {
    rows.push_back(detail::solve_row(detail::cusp_model(g, "I"), "cusp", "I", g, 0));
    rows.push_back(detail::solve_row(detail::cusp_model(g, "II"), "cusp", "II", g, 0));
    rows.push_back(detail::solve_row(detail::cusp_model(g, "III"), "cusp", "III", g, 0));
  }
  for (int g = 1; g <= 2; ++g) {
    rows.push_back(detail::solve_row(detail::cusp_model(g, "u"), "cusp", "u", g, 0));
    rows.push_back(detail::solve_row(detail::cusp_model(g, "v"), "cusp", "v", g, 0));
  }
  rows.push_back(detail::solve_row(detail::cusp_model(1, "w"), "cusp", "w", 1, 0));
  rows.push_back(detail::solve_row(detail::cusp_model(1, "u;n"), "cusp", "u;n", 1, 0));
  rows.push_back(detail::solve_row(detail::cusp_model(1, "v;f"), "cusp", "v;f", 1, 0));
  rows.push_back(detail::solve_row(detail::cusp_model(1, "v;f2"), "cusp", "v;f^2", 1, 0));
  rows.push_back(detail::solve_row(detail::cusp_model(1, "v;n"), "cusp", "v;n", 1, 0));
  rows.push_back(detail::solve_row(detail::cusp_model(1, "v;n2"), "cusp", "v;n^2", 1, 0));
  return rows;
}

/// Coefficient of the configuration-I divisor under K + cX (+ dY), as a
/// divisor over the smooth germ downstairs: the flush obstruction
/// g(c+d-1) for nodes and g(2c-1) for cusps.
inline EpsRational configuration_one_coefficient(bool node, int g, const Rational& c,
                                                 const Rational& d) {
  Configuration cfg = Configuration::local_germ();
  int x = cfg.add_abstract_curve("X");
  Boundary delta{{x, EpsRational(c)}};
  if (node) {
    int y = cfg.add_abstract_curve("Y");
    cfg.inter[x][y] = cfg.inter[y][x] = g;
    cfg.add_point("q", {GermAt{x}, GermAt{y}}, {{0, 1, g}});
    delta[y] = EpsRational(d);
  } else {
    cfg.add_point("q", {GermAt{x, g}});
  }
  // blow up g times along the singularity, tracking coefficients with the
  // recursion e(E) = sum coef_i m_i - 1
  std::map<int, EpsRational> coef;
  for (const auto& [cv, v] : delta) coef[cv] = v;
  int point = cfg.point_index("q");
  EpsRational last;
  for (int i = 0; i < g; ++i) {
    EpsRational e{Rational(-1)};
    int followMember = -1;
    const auto members = cfg.points[point].members;
    for (std::size_t k = 0; k < members.size(); ++k) {
      auto it = coef.find(members[k].curve);
      if (it != coef.end()) e += it->second * EpsRational(Rational(members[k].mult()));
      if (members[k].curve == x) followMember = static_cast<int>(k);
    }
    std::map<int, int> landing;
    int eIdx = cfg.blow_up(point, &landing);
    coef[eIdx] = e;
    last = e;
    if (i + 1 < g) point = landing.at(followMember);
  }
  return last;
}

// ---------------------------------------------------------------------------

/// A P1-fibration germ: the scheme fibre of a tower of blow-ups over a
/// smooth fibre, with multiplicities.
struct FibreModel {
  Configuration cfg;
  std::vector<long long> mult;  // per curve
  int sigma = -1;               // the unique -1 curve of the fibre

  static FibreModel base() {
    FibreModel f;
    f.cfg = Configuration::local_germ();
    int h = f.cfg.add_abstract_curve("H");
    f.cfg.curves[h].selfInt = 0;
    f.cfg.curves[h].kDeg = -2;
    f.mult = {1};
    f.sigma = h;
    return f;
  }

  int blow_at(int pointId) {
    long long m = 0;
    for (const auto& g : cfg.points[pointId].members) m += mult[g.curve] * g.mult();
    int e = cfg.blow_up(pointId);
    cfg.curves[e].name = "f" + std::to_string(cfg.curves.size() - 1);
    mult.push_back(m);
    sigma = e;
    return e;
  }
  /// blow-up at the intersection with another fibre component
  int blow_meet(int other) { return blow_at(cfg.meet_point(sigma, other)); }
  /// interior blow-up: a free point of the -1 curve
  int blow_interior() { return blow_at(cfg.add_point("", {GermAt{sigma}})); }

  long long multiplicity() const { return mult[sigma]; }

  /// the scheme fibre is numerically trivial: F^2 = 0 and K.F = -2
  bool fibre_consistent() const {
    Rational f2, kf;
    for (std::size_t i = 0; i < cfg.curves.size(); ++i) {
      kf += Rational(mult[i]) * Rational(cfg.curves[i].kDeg);
      f2 += Rational(mult[i]) * Rational(mult[i]) * Rational(cfg.curves[i].selfInt);
      for (std::size_t j = 0; j < cfg.curves.size(); ++j)
        if (j != i) f2 += Rational(mult[i]) * Rational(mult[j]) * Rational(cfg.inter[i][j]);
    }
    return f2.is_zero() && kf == Rational(-2);
  }

  SurfaceModel contract() const {
    std::vector<int> exceptional;
    for (std::size_t i = 0; i < cfg.curves.size(); ++i)
      if (static_cast<int>(i) != sigma) exceptional.push_back(static_cast<int>(i));
    return contract_to_surface(cfg, ContractPolicy::Explicit, exceptional);
  }

  /// chain-ordered (selfInt, multiplicity) pairs of the whole fibre
  std::vector<std::pair<long long, long long>> shape() const {
    // walk the dual chain from an end (the fibre tree is a chain for the
    // catalogue entries; fall back to sorted pairs otherwise)
    std::size_t n = cfg.curves.size();
    std::vector<int> deg(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && cfg.inter[i][j] > 0) deg[i] += 1;
    int start = -1;
    for (std::size_t i = 0; i < n; ++i)
      if (deg[i] <= 1) start = static_cast<int>(i);
    std::vector<std::pair<long long, long long>> out;
    if (start < 0) return out;
    std::vector<char> used(n, 0);
    int cur = start, prev = -1;
    while (cur >= 0) {
      used[cur] = 1;
      out.emplace_back(cfg.curves[cur].selfInt, mult[cur]);
      int next = -1;
      for (std::size_t j = 0; j < n; ++j)
        if (!used[j] && cfg.inter[cur][j] > 0) next = static_cast<int>(j);
      prev = cur;
      cur = next;
    }
    if (out.size() != n) out.clear();  // not a chain
    std::vector<std::pair<long long, long long>> rev(out.rbegin(), out.rend());
    return std::min(out, rev);
  }
};

/// One verified entry of the multiple-fibre catalogue (11.5.9).
struct FibreEntry {
  std::string label;
  long long multiplicity = 0;
  bool ltKG = false;  // K_T + G log terminal
  FibreModel model;
  std::vector<std::pair<long long, long long>> fibreShape;
};

namespace detail {

inline bool kg_lt(const FibreModel& f) {
  SurfaceModel t = f.contract();
  for (std::size_t i = 0; i < t.sings.size(); ++i) {
    PointVerdict v = classify_reduced_at_point(t, static_cast<int>(i), {t.cfg.curve_index(
        f.cfg.curves[f.sigma].name)});
    if (!v.lt) return false;
  }
  return true;
}

inline FibreEntry finish(std::string label, FibreModel f) {
  FibreEntry e;
  e.label = std::move(label);
  e.multiplicity = f.multiplicity();
  if (!f.fibre_consistent()) fail(ErrorKind::Internal, "fibre not numerically trivial");
  e.ltKG = kg_lt(f);
  e.fibreShape = f.shape();
  e.model = std::move(f);
  return e;
}

}  // namespace detail

/// Builds the eight fibres of (11.5.9) explicitly. The tail parameter k of
/// entry (5) ranges over 1..4.
inline std::vector<FibreEntry> fibre_catalogue() {
  std::vector<FibreEntry> out;
  auto base = [](int k) {
    FibreModel f = FibreModel::base();
    int h = 0;
    f.blow_at(f.cfg.add_point("", {GermAt{h}}));
    for (int i = 0; i < k; ++i) f.blow_meet(h);
    return f;
  };
  {  // (1) (2,2',2), m=2
    FibreModel f = base(1);
    f.blow_interior();
    out.push_back(detail::finish("(2,2',2)", std::move(f)));
  }
  {  // (2) (3,2',2,2), m=3
    FibreModel f = base(2);
    f.blow_interior();
    out.push_back(detail::finish("(3,2',2,2)", std::move(f)));
  }
  {  // (3) (2';z), m=4, z a star
    FibreModel f = base(1);
    int e2 = f.sigma;
    f.blow_interior();
    int e3 = f.sigma;
    f.blow_interior();
    f.blow_meet(e3);
    (void)e2;
    out.push_back(detail::finish("(2';z)", std::move(f)));
  }
  {  // (4) (2,3',2;2'), m=4
    FibreModel f = base(1);
    int e2 = f.sigma;
    f.blow_interior();
    f.blow_meet(e2);
    out.push_back(detail::finish("(2,3',2;2')", std::move(f)));
  }
  for (int k = 1; k <= 4; ++k) {  // (5) (A_k;(k+1)'), m = k+1
    out.push_back(detail::finish("(A_" + std::to_string(k) + ";(k+1)')", base(k)));
  }
  {  // (6) (2,3';2',3), m=5
    FibreModel f = base(2);
    int e2 = 2;  // the -2 of the base(2) chain next to sigma
    f.blow_meet(e2);
    out.push_back(detail::finish("(2,3';2',3)", std::move(f)));
  }
  {  // (7) (3,2,2';4',2), m=7
    FibreModel f = base(2);
    int e2 = 2;
    int e3 = f.sigma;
    f.blow_meet(e2);
    (void)e3;
    f.blow_meet(e2);
    out.push_back(detail::finish("(3,2,2';4',2)", std::move(f)));
  }
  {  // (8) (4,2';3',2,2), m=7
    FibreModel f = base(3);
    int e3 = 3;  // the -2 next to sigma in the base(3) chain
    f.blow_meet(e3);
    out.push_back(detail::finish("(4,2';3',2,2)", std::move(f)));
  }
  return out;
}

/// Exhaustive search over blow-up towers of bounded depth; used to verify
/// that the catalogue is complete for multiplicity-3 fibres with e(T) < 2/3
/// (11.5.13) and to reproduce the Du Val list (11.5.12).
inline void enumerate_fibres(int maxDepth, const std::function<void(const FibreModel&)>& visit) {
  FibreModel f0 = FibreModel::base();
  f0.blow_at(f0.cfg.add_point("", {GermAt{0}}));
  // after the mandatory second blow-up at the crossing, explore freely
  std::function<void(FibreModel&, int)> rec = [&](FibreModel& f, int depth) {
    visit(f);
    if (depth >= maxDepth) return;
    // non-interior: each component meeting sigma
    for (std::size_t j = 0; j < f.cfg.curves.size(); ++j) {
      if (static_cast<int>(j) == f.sigma || f.cfg.inter[f.sigma][j] <= 0) continue;
      FibreModel g = f;
      g.blow_meet(static_cast<int>(j));
      rec(g, depth + 1);
    }
    FibreModel g = f;
    g.blow_interior();
    rec(g, depth + 1);
  };
  FibreModel f1 = f0;
  f1.blow_meet(0);
  rec(f1, 0);
}

}  // namespace ldp
