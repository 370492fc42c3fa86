#pragma once

#include "ldp/program.hpp"
#include "ldp/surface.hpp"

#include <map>
#include <string>
#include <vector>

namespace ldp {

/// Log resolution of (S, Delta): the configuration blown up until the
/// exceptional locus and the strict transform of supp Delta have simple
/// normal crossings, with the log-pullback coefficient of every divisor.
struct LogResolution {
  Configuration cfg;
  std::vector<EpsRational> coef;  // per curve of cfg
  std::vector<int> newCurves;     // curves created by the resolution
  // provenance of each curve: singular point id, or a smooth-point root
  // (index of the first blown tracked point), or neither
  std::vector<int> originSing;
  std::vector<int> originRoot;
};

namespace detail {

inline bool relevant_point_resolved(const MeetPoint& p, const std::vector<char>& relevant) {
  std::vector<int> rel;
  for (std::size_t i = 0; i < p.members.size(); ++i)
    if (relevant[p.members[i].curve]) rel.push_back(static_cast<int>(i));
  if (rel.empty()) return true;
  for (int i : rel)
    if (p.members[i].cusp > 0) return false;
  if (rel.size() >= 3) return false;
  if (rel.size() == 2 && p.contact[rel[0]][rel[1]] >= 2) return false;
  return true;
}

}  // namespace detail

/// Iteratively blows up every point where the relevant locus fails simple
/// normal crossings. Coefficients follow the standard blow-up recursion
/// e(E) = sum coef_i m_i - 1.
inline LogResolution log_resolution(const SurfaceModel& s, const Boundary& delta) {
  LogResolution lr;
  lr.cfg = s.cfg;
  lr.coef.assign(lr.cfg.curves.size(), EpsRational(Rational(0)));
  lr.originSing.assign(lr.cfg.curves.size(), -1);
  lr.originRoot.assign(lr.cfg.curves.size(), -1);
  auto minres = boundary_coefficients(s, delta);
  std::vector<char> relevant(lr.cfg.curves.size(), 0);
  for (std::size_t i = 0; i < lr.cfg.curves.size(); ++i)
    if (s.exceptional[i]) {
      relevant[i] = 1;
      lr.coef[i] = minres[i];
      lr.originSing[i] = s.singOf[i];
    }
  for (const auto& [c, v] : delta) {
    if (v.is_zero()) continue;
    relevant[c] = 1;
    lr.coef[c] = v;
  }

  int guard = 0;
  while (true) {
    if (++guard > 500) fail(ErrorKind::NonFiniteContact, "log resolution did not terminate");
    int target = -1;
    for (std::size_t pi = 0; pi < lr.cfg.points.size(); ++pi) {
      const MeetPoint& p = lr.cfg.points[pi];
      if (!p.alive) continue;
      if (!detail::relevant_point_resolved(p, relevant)) {
        target = static_cast<int>(pi);
        break;
      }
    }
    if (target < 0) break;
    EpsRational e(Rational(-1));
    int sing = -1, root = -1;
    for (const auto& g : lr.cfg.points[target].members) {
      e += lr.coef[g.curve] * EpsRational(Rational(g.mult()));
      if (lr.originSing[g.curve] >= 0) sing = lr.originSing[g.curve];
      if (lr.originRoot[g.curve] >= 0) root = lr.originRoot[g.curve];
    }
    if (sing < 0 && root < 0) root = target;
    int idx = lr.cfg.blow_up(target);
    lr.cfg.curves[idx].name = "v" + std::to_string(lr.newCurves.size() + 1);
    lr.coef.push_back(e);
    relevant.push_back(1);
    lr.originSing.push_back(sing);
    lr.originRoot.push_back(sing >= 0 ? -1 : root);
    lr.newCurves.push_back(idx);
  }
  return lr;
}

/// Coefficient e(V, K_S + Delta) of a named divisor: either a curve of the
/// minimal resolution or a divisor of the log resolution ("v1", "v2", ...).
inline EpsRational coefficient_of(const SurfaceModel& s, const Boundary& delta,
                                  const std::string& name) {
  int idx = s.cfg.curve_index(name);
  if (idx >= 0 && s.exceptional[idx]) return boundary_coefficients(s, delta)[idx];
  LogResolution lr = log_resolution(s, delta);
  int v = lr.cfg.curve_index(name);
  if (v < 0) fail(ErrorKind::UnknownCurve, "no such divisor: " + name);
  return lr.coef[v];
}

/// Outcome of a flush / level test with the maximizing divisor.
struct FlushReport {
  bool flush = true;
  bool level = true;
  EpsRational maxCoefficient{Rational(0)};
  std::string witness;  // divisor attaining the supremum
};

/// Checks e(V, K+Delta) < m (resp. <=) over all exceptional divisors:
/// minimal-resolution curves, log-resolution divisors, and the supremum
/// over divisors above each normal crossing of the resolved locus.
inline FlushReport flushness(const SurfaceModel& s, const Boundary& delta) {
  FlushReport r;
  EpsRational m = min_nonzero(delta);
  auto consider = [&](const EpsRational& e, const std::string& who) {
    if (e > r.maxCoefficient || r.witness.empty()) {
      r.maxCoefficient = e;
      r.witness = who;
    }
    if (e >= m) r.flush = false;
    if (e > m) r.level = false;
  };

  // minimal resolution first: an early hit already decides flushness
  auto minres = boundary_coefficients(s, delta);
  for (std::size_t i = 0; i < s.cfg.curves.size(); ++i)
    if (s.exceptional[i]) consider(minres[i], s.cfg.curves[i].name);
  if (!r.level) return r;

  LogResolution lr = log_resolution(s, delta);
  for (int v : lr.newCurves) consider(lr.coef[v], lr.cfg.curves[v].name);

  // sup over infinitely-near divisors above each remaining crossing:
  // for a normal crossing of coefficients (a, b) the first blow-up gives
  // a+b-1 and deeper ones only decrease while coefficients stay <= 1
  std::vector<char> positive(lr.cfg.curves.size(), 0);
  for (std::size_t i = 0; i < lr.cfg.curves.size(); ++i)
    positive[i] = lr.coef[i] > EpsRational(Rational(0)) ? 1 : 0;
  std::vector<std::vector<long long>> seen(lr.cfg.curves.size(),
                                           std::vector<long long>(lr.cfg.curves.size(), 0));
  auto crossing = [&](int a, int b) {
    if (!positive[a] || !positive[b]) return;
    consider(lr.coef[a] + lr.coef[b] - EpsRational(Rational(1)),
             lr.cfg.curves[a].name + "*" + lr.cfg.curves[b].name);
  };
  for (const auto& p : lr.cfg.points) {
    if (!p.alive) continue;
    for (std::size_t i = 0; i < p.members.size(); ++i)
      for (std::size_t j = i + 1; j < p.members.size(); ++j) {
        if (p.contact[i][j] <= 0) continue;
        int a = p.members[i].curve, b = p.members[j].curve;
        crossing(a, b);
        seen[std::min(a, b)][std::max(a, b)] += p.contact[i][j];
      }
  }
  for (std::size_t a = 0; a < lr.cfg.curves.size(); ++a)
    for (std::size_t b = a + 1; b < lr.cfg.curves.size(); ++b)
      if (lr.cfg.inter[a][b] > seen[a][b]) crossing(static_cast<int>(a), static_cast<int>(b));
  return r;
}

inline bool is_flush(const SurfaceModel& s, const Boundary& delta) {
  return flushness(s, delta).flush;
}
inline bool is_level(const SurfaceModel& s, const Boundary& delta) {
  return flushness(s, delta).level;
}

/// Verdict of K_S + C at one singular point for reduced C, by the
/// combinatorial classification of log terminal pairs.
struct PointVerdict {
  bool lt = false;
  bool lc = false;
};

inline PointVerdict classify_reduced_at_point(const SurfaceModel& s, int singIdx,
                                              const std::vector<int>& support) {
  const SurfacePoint& sp = s.sings[singIdx];
  // collect the branches of the support at this point
  std::vector<Branch> germs;
  for (int c : support)
    for (auto& b : branches_at_singular_points(s, c))
      if (b.sing == singIdx) germs.push_back(std::move(b));
  PointVerdict out;
  if (germs.empty()) {
    out.lt = out.lc = true;  // bare lt point
    return out;
  }
  auto normal_at = [&](const Branch& b) { return b.meets.size() == 1; };
  if (std::holds_alternative<Chain>(sp.graph)) {
    int first = sp.curveOf.front(), last = sp.curveOf.back();
    if (germs.size() == 1 && normal_at(germs[0]) &&
        (germs[0].meets[0] == first || germs[0].meets[0] == last)) {
      out.lt = out.lc = true;
      return out;
    }
    // two disjoint normal germs at opposite ends: lc, not lt (a single
    // curve of the chain counts as both ends)
    if (germs.size() == 2 && normal_at(germs[0]) && normal_at(germs[1])) {
      int a = germs[0].meets[0], b = germs[1].meets[0];
      if ((a == first && b == last) || (a == last && b == first)) {
        out.lc = true;
        return out;
      }
    }
    return out;  // not lc
  }
  // star: lc (not lt) iff the germ is unique and normal, meets the far end
  // of its branch, and the two other branches are both (2)
  const Star& st = std::get<Star>(sp.graph);
  if (germs.size() == 1 && normal_at(germs[0])) {
    int met = germs[0].meets[0];
    std::size_t base = 1;
    for (std::size_t bi = 0; bi < 3; ++bi) {
      const Chain& br = st.branches[bi];
      int farEnd = sp.curveOf[base + br.size() - 1];
      if (met == farEnd) {
        bool othersAreA1 = true;
        for (std::size_t bj = 0; bj < 3; ++bj)
          if (bj != bi && st.branches[bj].weights != std::vector<int>{2}) othersAreA1 = false;
        if (othersAreA1) {
          out.lc = true;
          return out;
        }
      }
      base += br.size();
    }
  }
  return out;
}

/// Verdict for one point of the pair (S, Delta). klt and lc are numeric
/// (all divisor coefficients over the point < 1 resp. <= 1). lt and plt are
/// only defined for reduced boundaries; at smooth points they depend on the
/// Zariski-local structure, not on coefficients.
struct PointReport {
  std::string where;
  int sing = -1;  // singular point id, or -1 for a smooth point
  bool klt = true;
  bool lc = true;
  std::optional<bool> lt;
  std::optional<bool> plt;
  EpsRational sup{Rational(0)};     // sup of coefficients over the point
  EpsRational supExc{Rational(0)};  // same, exceptional divisors only
};

inline std::vector<PointReport> classify_pair(const SurfaceModel& s, const Boundary& delta) {
  const EpsRational one{Rational(1)};
  LogResolution lr = log_resolution(s, delta);

  // map each curve of the resolution to a point bucket
  // bucket key: sing id >= 0, or 10^6 + smooth root id
  auto bucket_of_curve = [&](int c) -> int {
    if (lr.originSing[c] >= 0) return lr.originSing[c];
    if (lr.originRoot[c] >= 0) return 1000000 + lr.originRoot[c];
    return -1;
  };
  std::map<int, PointReport> buckets;
  auto touch = [&](int key) -> PointReport& {
    auto [it, inserted] = buckets.try_emplace(key);
    if (inserted) {
      if (key < 1000000) {
        it->second.sing = key;
        it->second.where = graph_str(s.sings[key].graph);
      } else {
        it->second.where = "smooth point";
      }
    }
    return it->second;
  };
  auto bumpDiv = [&](int key, const EpsRational& e) {
    PointReport& r = touch(key);
    r.supExc = std::max(r.supExc, e);
    r.sup = std::max(r.sup, e);
  };
  for (std::size_t i = 0; i < lr.cfg.curves.size(); ++i) {
    int key = bucket_of_curve(static_cast<int>(i));
    if (key >= 0) bumpDiv(key, lr.coef[i]);
  }
  // crossings raise the supremum: divisors above a normal crossing of
  // coefficients (a,b) approach a+b-1 from below
  std::vector<std::vector<long long>> seen(lr.cfg.curves.size(),
                                           std::vector<long long>(lr.cfg.curves.size(), 0));
  auto bumpCross = [&](int a, int b, int viaPoint) {
    if (!(lr.coef[a] > EpsRational(Rational(0))) || !(lr.coef[b] > EpsRational(Rational(0))))
      return;
    int key = bucket_of_curve(a);
    if (key < 0) key = bucket_of_curve(b);
    if (key < 0) key = 1000000 + viaPoint;  // crossing of two boundary curves
    PointReport& r = touch(key);
    EpsRational e = lr.coef[a] + lr.coef[b] - one;
    r.sup = std::max(r.sup, e);
    r.supExc = std::max(r.supExc, e);
  };
  for (std::size_t pi = 0; pi < lr.cfg.points.size(); ++pi) {
    const MeetPoint& p = lr.cfg.points[pi];
    if (!p.alive) continue;
    for (std::size_t i = 0; i < p.members.size(); ++i)
      for (std::size_t j = i + 1; j < p.members.size(); ++j)
        if (p.contact[i][j] > 0) {
          int a = p.members[i].curve, b = p.members[j].curve;
          bumpCross(a, b, static_cast<int>(pi));
          seen[std::min(a, b)][std::max(a, b)] += p.contact[i][j];
        }
  }
  for (std::size_t a = 0; a < lr.cfg.curves.size(); ++a)
    for (std::size_t b = a + 1; b < lr.cfg.curves.size(); ++b)
      if (lr.cfg.inter[a][b] > seen[a][b])
        bumpCross(static_cast<int>(a), static_cast<int>(b), -1000000);

  // boundary coefficients of curves through a point count for klt/lc
  std::vector<int> support;
  bool reduced = !delta.empty();
  for (const auto& [c, v] : delta) {
    if (v.is_zero()) continue;
    support.push_back(c);
    if (!(v == one)) reduced = false;
    for (const auto& br : branches_at_singular_points(s, c)) {
      PointReport& r = touch(br.sing);
      r.sup = std::max(r.sup, v);
    }
  }

  // every singular point reports, germs or not
  for (std::size_t i = 0; i < s.sings.size(); ++i) touch(static_cast<int>(i));

  std::vector<PointReport> out;
  for (auto& [key, r] : buckets) {
    r.klt = r.sup < one;
    r.lc = r.sup <= one;
    if (reduced) {
      if (r.sing >= 0) {
        // The combinatorial test is authoritative: in degenerate
        // configurations (cf. the warning after 8.3.3) a pair can have all
        // coefficients <= 1 without being log canonical.
        PointVerdict pv = classify_reduced_at_point(s, r.sing, support);
        r.lt = pv.lt;
        r.plt = pv.lt;  // at singular points plt and lt coincide
        if (pv.lc && !r.lc)
          fail(ErrorKind::Internal, "combinatorially lc but a coefficient exceeds 1 at " + r.where);
        r.lc = pv.lc;
      } else {
        // smooth point: Zariski-local rule on the germs at the root point
        int root = key - 1000000;
        bool lt = true, plt = true;
        if (root >= 0 && root < static_cast<int>(s.cfg.points.size())) {
          const MeetPoint& p = s.cfg.points[root];
          std::vector<GermAt> germs;
          std::map<int, int> perCurve;
          for (const auto& g : p.members)
            if (std::find(support.begin(), support.end(), g.curve) != support.end()) {
              germs.push_back(g);
              perCurve[g.curve] += 1;
            }
          bool anyCusp = false;
          for (const auto& g : germs) anyCusp = anyCusp || g.cusp > 0;
          if (germs.size() == 1) {
            lt = plt = !anyCusp;
          } else if (germs.size() == 2) {
            plt = false;
            bool sameCurve = germs[0].curve == germs[1].curve;
            bool normal = true;
            for (std::size_t i = 0; i < p.members.size(); ++i)
              for (std::size_t j = i + 1; j < p.members.size(); ++j)
                if (p.contact[i][j] >= 2) normal = false;
            lt = !anyCusp && normal && !sameCurve;
          } else {
            lt = plt = false;
          }
        }
        r.lt = lt;
        r.plt = plt;
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace ldp
