#pragma once

#include "ldp/chain.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace ldp {

/// A curve on the current smooth model.
struct Curve {
  std::string name;
  long long selfInt = 0;
  long long kDeg = 0;
  bool fromBlowup = false;  // exceptional curve of some blow-up step
  int planeDegree = 0;      // for curves declared on P2
};

/// One local branch of a curve at a tracked point. cusp > 0 marks a
/// unibranch double point of that residual genus (multiplicity 2).
struct GermAt {
  int curve = -1;
  int cusp = 0;
  int mult() const { return cusp > 0 ? 2 : 1; }
};

/// A tracked point of the current model: the curve germs through it and
/// their pairwise local intersection numbers. Intersections not localized
/// at a tracked point are implicitly at generic transverse points.
struct MeetPoint {
  std::string name;
  std::vector<GermAt> members;
  std::vector<std::vector<int>> contact;  // symmetric, diag unused
  bool alive = true;

  int find_curve(int curve) const {
    for (std::size_t i = 0; i < members.size(); ++i)
      if (members[i].curve == curve) return static_cast<int>(i);
    return -1;
  }
  bool has_curve(int curve) const { return find_curve(curve) >= 0; }
};

/// Exact intersection bookkeeping for a surface presented as an iterated
/// blow-up of P2 (or of an abstract germ, for local studies).
class Configuration {
 public:
  std::vector<Curve> curves;
  std::vector<std::vector<long long>> inter;  // symmetric off-diagonal table
  std::vector<MeetPoint> points;
  long long kSquaredSmooth = 9;
  bool planeStart = true;
  int blowups = 0;
  int nameCounter = 0;

  static Configuration p2() { return Configuration{}; }
  static Configuration local_germ() {
    Configuration c;
    c.kSquaredSmooth = 0;
    c.planeStart = false;
    return c;
  }

  int curve_index(const std::string& name) const {
    for (std::size_t i = 0; i < curves.size(); ++i)
      if (curves[i].name == name) return static_cast<int>(i);
    return -1;
  }
  int require_curve(const std::string& name) const {
    int i = curve_index(name);
    if (i < 0) fail(ErrorKind::UnknownCurve, "unknown curve: " + name);
    return i;
  }
  int point_index(const std::string& name) const {
    for (std::size_t i = 0; i < points.size(); ++i)
      if (points[i].alive && points[i].name == name) return static_cast<int>(i);
    return -1;
  }

  int add_curve(Curve c) {
    if (curve_index(c.name) >= 0) fail(ErrorKind::Parse, "duplicate curve: " + c.name);
    curves.push_back(std::move(c));
    for (auto& row : inter) row.push_back(0);
    inter.emplace_back(curves.size(), 0);
    return static_cast<int>(curves.size()) - 1;
  }

  int add_plane_curve(const std::string& name, int degree) {
    if (!planeStart) fail(ErrorKind::Parse, "plane curve on a local germ start");
    Curve c;
    c.name = name;
    c.planeDegree = degree;
    c.selfInt = static_cast<long long>(degree) * degree;
    c.kDeg = -3LL * degree;
    int idx = add_curve(std::move(c));
    for (int j = 0; j < idx; ++j)
      if (!curves[j].fromBlowup)
        inter[idx][j] = inter[j][idx] = static_cast<long long>(degree) * curves[j].planeDegree;
    return idx;
  }

  int add_abstract_curve(const std::string& name) {
    Curve c;
    c.name = name;
    return add_curve(std::move(c));
  }

  /// Total multiplicity of a curve at a point (sum over its germs there).
  int mult_at(const MeetPoint& p, int curve) const {
    int m = 0;
    for (const auto& g : p.members)
      if (g.curve == curve) m += g.mult();
    return m;
  }

  /// Contact between two curves already localized at tracked points.
  long long tracked_contact(int a, int b) const {
    long long total = 0;
    for (const auto& p : points) {
      if (!p.alive) continue;
      for (std::size_t i = 0; i < p.members.size(); ++i)
        for (std::size_t j = i + 1; j < p.members.size(); ++j) {
          if ((p.members[i].curve == a && p.members[j].curve == b) ||
              (p.members[i].curve == b && p.members[j].curve == a))
            total += p.contact[i][j];
        }
    }
    return total;
  }

  /// Registers a tracked point. Contacts default to 1; entries of `contacts`
  /// are (memberIndexA, memberIndexB, order).
  int add_point(const std::string& name, std::vector<GermAt> members,
                const std::vector<std::tuple<int, int, int>>& contacts = {}) {
    if (!name.empty() && point_index(name) >= 0)
      fail(ErrorKind::Parse, "duplicate point: " + name);
    MeetPoint p;
    p.name = name;
    p.members = std::move(members);
    std::size_t n = p.members.size();
    p.contact.assign(n, std::vector<int>(n, 1));
    for (std::size_t i = 0; i < n; ++i) p.contact[i][i] = 0;
    for (auto [i, j, k] : contacts) {
      p.contact[i][j] = p.contact[j][i] = k;
    }
    // budget check against the intersection table
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        int a = p.members[i].curve, b = p.members[j].curve;
        if (a == b) continue;
        long long budget = inter[a][b] - tracked_contact(a, b);
        if (p.contact[i][j] > budget)
          fail(ErrorKind::ContactExceedsIntersection,
               "contact " + std::to_string(p.contact[i][j]) + " between " + curves[a].name +
                   " and " + curves[b].name + " exceeds remaining intersection " +
                   std::to_string(budget));
      }
    points.push_back(std::move(p));
    return static_cast<int>(points.size()) - 1;
  }

  /// Finds the tracked point where curves a and b meet, creating one from
  /// the free residual intersection when necessary.
  int meet_point(int a, int b) {
    int found = -1;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& p = points[i];
      if (!p.alive || !p.has_curve(a) || !p.has_curve(b)) continue;
      int ia = p.find_curve(a), ib = p.find_curve(b);
      if (p.contact[ia][ib] <= 0) continue;
      if (found >= 0)
        fail(ErrorKind::Parse, "ambiguous meeting point of " + curves[a].name + " and " +
                                    curves[b].name);
      found = static_cast<int>(i);
    }
    if (found >= 0) return found;
    long long budget = inter[a][b] - tracked_contact(a, b);
    if (budget <= 0)
      fail(ErrorKind::Parse,
           "curves " + curves[a].name + " and " + curves[b].name + " have no free intersection");
    return add_point("", {GermAt{a}, GermAt{b}});
  }

  /// Blows up at a tracked point. Returns the new exceptional curve index;
  /// `landing`, when given, receives germ -> tracked point of its strict
  /// transform on the new curve.
  int blow_up(int pointId, std::map<int, int>* landing = nullptr) {
    MeetPoint center = points[pointId];
    if (!center.alive) fail(ErrorKind::InconsistentCenter, "point already blown up");
    const std::size_t n = center.members.size();

    // residual contacts after the blow-up
    std::vector<std::vector<int>> res(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        int drop = center.members[i].mult() * center.members[j].mult();
        if (center.contact[i][j] < drop)
          fail(ErrorKind::InconsistentCenter,
               "contact at " + center.name + " below multiplicity product");
        res[i][j] = res[j][i] = center.contact[i][j] - drop;
      }

    // direction classes: germs still meeting share a tangent direction
    std::vector<int> cls(n, -1);
    int nclasses = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (cls[i] >= 0) continue;
      cls[i] = nclasses++;
      std::vector<std::size_t> stack{i};
      while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < n; ++j)
          if (res[v][j] > 0 && cls[j] < 0) {
            cls[j] = cls[i];
            stack.push_back(j);
          }
      }
    }
    // tangency must be transitive within a class
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (cls[i] == cls[j] && res[i][j] == 0 &&
            !(center.members[i].curve == center.members[j].curve))
          fail(ErrorKind::InconsistentCenter, "inconsistent tangency data at " + center.name);

    // table updates
    std::vector<int> mult(curves.size(), 0);
    for (const auto& g : center.members) mult[g.curve] += g.mult();
    for (std::size_t a = 0; a < curves.size(); ++a) {
      if (!mult[a]) continue;
      curves[a].selfInt -= static_cast<long long>(mult[a]) * mult[a];
      curves[a].kDeg += mult[a];
      for (std::size_t b = a + 1; b < curves.size(); ++b)
        if (mult[b]) {
          inter[a][b] -= static_cast<long long>(mult[a]) * mult[b];
          inter[b][a] = inter[a][b];
          if (inter[a][b] < 0)
            fail(ErrorKind::InconsistentCenter, "negative intersection after blow-up");
        }
    }

    Curve e;
    e.name = "#e" + std::to_string(++nameCounter);  // '#' cannot appear in program names
    e.selfInt = -1;
    e.kDeg = -1;
    e.fromBlowup = true;
    int eIdx = add_curve(std::move(e));
    for (std::size_t a = 0; a < curves.size(); ++a)
      if (mult[a]) inter[eIdx][a] = inter[a][eIdx] = mult[a];

    // new tracked points, one per direction class
    points[pointId].alive = false;
    for (int c = 0; c < nclasses; ++c) {
      MeetPoint np;
      std::vector<int> src;  // member index in the old point
      for (std::size_t i = 0; i < n; ++i)
        if (cls[i] == c) {
          GermAt g = center.members[i];
          src.push_back(static_cast<int>(i));
          if (g.cusp > 0) g.cusp -= 1;
          np.members.push_back(g);
        }
      GermAt eg;
      eg.curve = eIdx;
      np.members.push_back(eg);
      std::size_t m = np.members.size();
      np.contact.assign(m, std::vector<int>(m, 0));
      for (std::size_t i = 0; i + 1 < m; ++i) {
        for (std::size_t j = i + 1; j + 1 < m; ++j) {
          np.contact[i][j] = np.contact[j][i] = res[src[i]][src[j]];
        }
        // the strict transform meets E with multiplicity of the blown germ
        np.contact[i][m - 1] = np.contact[m - 1][i] = center.members[src[i]].mult();
      }
      points.push_back(std::move(np));
      int npId = static_cast<int>(points.size()) - 1;
      if (landing)
        for (int s : src) (*landing)[s] = npId;
    }

    kSquaredSmooth -= 1;
    blowups += 1;
    return eIdx;
  }

  /// Contracts a -1 curve; exact inverse of blow_up on the tracked data.
  void blow_down(int curveId) {
    if (curves[curveId].selfInt != -1 || curves[curveId].kDeg != -1)
      fail(ErrorKind::NotMinusOne, "blow_down: " + curves[curveId].name + " is not a -1 curve");

    // collect germs at tracked points on the contracted curve
    struct Incoming {
      GermAt germ;
      int pt;          // source point, -1 for a free transverse unit
      int idxInPt;     // member index within the source point
      int contactToC;  // local contact with the contracted curve
    };
    std::vector<Incoming> incoming;
    std::vector<long long> localized(curves.size(), 0);
    for (std::size_t pi = 0; pi < points.size(); ++pi) {
      MeetPoint& p = points[pi];
      if (!p.alive || !p.has_curve(curveId)) continue;
      int ci = p.find_curve(curveId);
      for (std::size_t i = 0; i < p.members.size(); ++i) {
        if (static_cast<int>(i) == ci) continue;
        if (p.members[i].curve == curveId)
          fail(ErrorKind::NotMinusOne, "blow_down: curve meets itself");
        incoming.push_back({p.members[i], static_cast<int>(pi), static_cast<int>(i),
                            p.contact[i][ci]});
        localized[p.members[i].curve] += p.contact[i][ci];
      }
      p.alive = false;
    }
    // free residual units become anonymous transverse germs
    for (std::size_t a = 0; a < curves.size(); ++a) {
      if (static_cast<int>(a) == curveId) continue;
      long long freeUnits = inter[a][curveId] - localized[a];
      if (freeUnits < 0) fail(ErrorKind::Internal, "blow_down: contact bookkeeping broken");
      for (long long u = 0; u < freeUnits; ++u)
        incoming.push_back({GermAt{static_cast<int>(a)}, -1, -1, 1});
    }

    // image point: germs merge, mutual contacts gain the product of the
    // contacts with the contracted curve (inverse of the blow_up rule)
    MeetPoint q;
    std::size_t m = incoming.size();
    for (const auto& in : incoming) {
      GermAt g = in.germ;
      if (in.contactToC >= 2) g.cusp += 1;
      q.members.push_back(g);
    }
    q.contact.assign(m, std::vector<int>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        int base = 0;
        if (incoming[i].pt >= 0 && incoming[i].pt == incoming[j].pt)
          base = points[incoming[i].pt].contact[incoming[i].idxInPt][incoming[j].idxInPt];
        q.contact[i][j] = q.contact[j][i] = base + incoming[i].contactToC * incoming[j].contactToC;
      }

    // table updates (inverse of blow_up)
    std::vector<long long> multAtQ(curves.size(), 0);
    for (std::size_t i = 0; i < m; ++i) multAtQ[incoming[i].germ.curve] += incoming[i].contactToC;
    for (std::size_t a = 0; a < curves.size(); ++a) {
      if (!multAtQ[a]) continue;
      curves[a].selfInt += multAtQ[a] * multAtQ[a];
      curves[a].kDeg -= multAtQ[a];
      for (std::size_t b = a + 1; b < curves.size(); ++b)
        if (multAtQ[b]) {
          inter[a][b] += multAtQ[a] * multAtQ[b];
          inter[b][a] = inter[a][b];
        }
    }
    if (m > 0) points.push_back(std::move(q));

    // remove the curve
    remove_curve(curveId);
    kSquaredSmooth += 1;
    blowups -= 1;
  }

  void remove_curve(int curveId) {
    curves.erase(curves.begin() + curveId);
    inter.erase(inter.begin() + curveId);
    for (auto& row : inter) row.erase(row.begin() + curveId);
    for (auto& p : points) {
      for (std::size_t i = p.members.size(); i-- > 0;) {
        if (p.members[i].curve == curveId) {
          p.members.erase(p.members.begin() + i);
          p.contact.erase(p.contact.begin() + i);
          for (auto& row : p.contact) row.erase(row.begin() + i);
        }
      }
      for (auto& g : p.members)
        if (g.curve > curveId) g.curve -= 1;
      if (p.members.empty()) p.alive = false;
    }
  }

};

}  // namespace ldp
