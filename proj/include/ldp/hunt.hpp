#pragma once

#include "ldp/flush.hpp"
#include "ldp/surface.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ldp {

/// Outcome of looking for the K-negative extremal ray on a rank-two model.
struct Extremal {
  enum class Kind { Sigma, Fibre, Unresolved } kind = Kind::Unresolved;
  int curve = -1;
};

/// One executed hunt step.
struct HuntRecord {
  std::string extracted;                // E_{i+1}
  std::string xPoint;                   // graph of the point it came from
  std::optional<EpsRational> lambda;    // absent when Gamma_eps . R is infinitesimal
  Rational gammaCoefficient;            // m_{i+1} of the gamma sequence
  bool net = false;
  std::string rayCurve;                 // Sigma (contracted) or the fibre
  std::vector<std::string> singularitiesAfter;
  std::vector<std::pair<std::string, EpsRational>> boundaryAfter;
};

struct HuntState {
  SurfaceModel surface;
  Boundary boundary;        // Delta_i
  Boundary gamma;           // gamma_i = sum m_j E_j (21.1)
  int step = 0;
  bool finished = false;    // net reached
  std::vector<HuntRecord> log;
};

inline HuntState start_hunt(SurfaceModel s, Boundary delta = {}) {
  HuntState st;
  st.surface = std::move(s);
  st.boundary = std::move(delta);
  return st;
}

/// Maximal-coefficient divisor of the minimal desingularisation. Among
/// maximal choices at a cyclic point one of weight >= 3 is preferred, at a
/// non-chain point the central divisor is required; lowest index breaks
/// remaining ties.
inline int select_hunt_divisor(const SurfaceModel& s, const Boundary& delta) {
  if (s.sings.empty()) fail(ErrorKind::SmoothSurface, "no singular points to extract from");
  auto coef = boundary_coefficients(s, delta);
  EpsRational best;
  bool seen = false;
  for (std::size_t i = 0; i < s.cfg.curves.size(); ++i) {
    if (!s.exceptional[i]) continue;
    if (!seen || coef[i] > best) best = coef[i];
    seen = true;
  }
  std::vector<int> maximal;
  for (std::size_t i = 0; i < s.cfg.curves.size(); ++i)
    if (s.exceptional[i] && coef[i] == best) maximal.push_back(static_cast<int>(i));
  // star point: the central divisor is the required choice
  for (int c : maximal) {
    const SurfacePoint& sp = s.sings[s.singOf[c]];
    if (std::holds_alternative<Star>(sp.graph)) {
      int center = sp.curveOf.front();
      if (coef[center] != best)
        fail(ErrorKind::Internal, "central divisor is not of maximal coefficient");
      return center;
    }
  }
  for (int c : maximal)
    if (s.cfg.curves[c].selfInt <= -3) return c;
  return maximal.front();
}

/// lambda with K_T + lambda Gamma_eps trivial on R, and the scaled boundary.
/// When Gamma_eps . R is purely infinitesimal (the Du Val start) lambda is
/// unbounded but the scaled coefficients are still well defined.
inline std::pair<std::optional<EpsRational>, Boundary> scale(const SurfaceModel& t,
                                                             const Boundary& gammaEps, int ray) {
  Rational kr = k_dot(t, ray);
  if (kr.sign() >= 0) fail(ErrorKind::RayNotNegative, "K.R >= 0 on the extremal ray");
  EpsRational denom;
  for (const auto& [c, v] : gammaEps)
    if (!v.is_zero()) denom += v * EpsRational(q_intersection(t, c, ray));
  if (denom.is_zero()) fail(ErrorKind::DegenerateRay, "Gamma_eps . R = 0");
  EpsRational numer{-kr};
  std::optional<EpsRational> lambda;
  Boundary scaled;
  if (!denom.std().is_zero()) {
    lambda = numer / denom;
    for (const auto& [c, v] : gammaEps) scaled[c] = v * *lambda;
  } else {
    // (a eps) / (d eps) = a/d exactly; every coefficient is infinitesimal
    for (const auto& [c, v] : gammaEps) {
      if (!v.std().is_zero())
        fail(ErrorKind::DegenerateRay, "mixed infinitesimal scaling");
      scaled[c] = EpsRational(v.eps_part() * numer.std() / denom.eps_part());
    }
  }
  return {lambda, scaled};
}

/// Scans the tracked curves for the K-negative ray: a curve with negative
/// Mumford self-intersection contracts (Sigma), one with zero fibres (net).
/// The engine never invents curves: no candidate means Unresolved.
inline Extremal find_extremal(const SurfaceModel& t, int extracted) {
  Extremal sigma, fibre;
  for (std::size_t i = 0; i < t.cfg.curves.size(); ++i) {
    int c = static_cast<int>(i);
    if (t.exceptional[i] || c == extracted) continue;
    if (k_dot(t, c).sign() >= 0) continue;
    Rational qs = q_self(t, c);
    if (qs.sign() < 0 && sigma.kind == Extremal::Kind::Unresolved) {
      sigma.kind = Extremal::Kind::Sigma;
      sigma.curve = c;
    } else if (qs.is_zero() && fibre.kind == Extremal::Kind::Unresolved) {
      fibre.kind = Extremal::Kind::Fibre;
      fibre.curve = c;
    }
  }
  if (sigma.kind == Extremal::Kind::Sigma) return sigma;
  if (fibre.kind == Extremal::Kind::Fibre) return fibre;
  return {};
}

namespace detail {

/// Contracts sigma and then every exceptional -1 curve until the model is
/// minimal again. Returns the contracted surface.
inline SurfaceModel contract_ray(const SurfaceModel& t, int sigma) {
  Configuration cfg = t.cfg;
  std::vector<char> exc(t.exceptional.begin(), t.exceptional.end());
  auto drop = [&](int idx) {
    cfg.blow_down(idx);
    exc.erase(exc.begin() + idx);
  };
  drop(sigma);
  while (true) {
    int next = -1;
    for (std::size_t i = 0; i < cfg.curves.size(); ++i)
      if (exc[i] && cfg.curves[i].selfInt == -1) {
        next = static_cast<int>(i);
        break;
      }
    if (next < 0) break;
    if (cfg.curves[next].kDeg != -1)
      fail(ErrorKind::ContractionNotLT, "cascade hit a non-rational -1 curve");
    drop(next);
  }
  std::vector<int> subset;
  for (std::size_t i = 0; i < cfg.curves.size(); ++i)
    if (exc[i]) subset.push_back(static_cast<int>(i));
  try {
    return contract_to_surface(std::move(cfg), ContractPolicy::Explicit, subset);
  } catch (const Error& e) {
    fail(ErrorKind::ContractionNotLT, std::string("contraction is not log terminal: ") + e.what());
  }
}

}  // namespace detail

/// One hunt step: select, extract, scale to R-triviality, contract (or stop
/// at a net). Tracked coefficients must strictly increase.
inline void hunt_step(HuntState& st) {
  if (st.finished) fail(ErrorKind::Internal, "hunt already finished");
  SurfaceModel& s = st.surface;
  int sel = select_hunt_divisor(s, st.boundary);
  HuntRecord rec;
  rec.extracted = s.cfg.curves[sel].name;
  rec.xPoint = graph_str(s.sings[s.singOf[sel]].graph);
  rec.gammaCoefficient = boundary_coefficients(s, st.gamma)[sel].std();

  auto [t, gamma] = extract_divisor(s, sel, st.boundary);
  Boundary gammaEps = gamma;
  gammaEps[sel] += EpsRational::eps();

  Extremal ray = find_extremal(t, sel);
  if (ray.kind == Extremal::Kind::Unresolved)
    fail(ErrorKind::BuildFailure,
         "no tracked extremal curve on the rank-two model; add the needed curve to the program");
  rec.rayCurve = t.cfg.curves[ray.curve].name;

  if (ray.kind == Extremal::Kind::Fibre) {
    rec.net = true;
    st.finished = true;
    st.surface = std::move(t);
    st.boundary = std::move(gammaEps);
    st.log.push_back(std::move(rec));
    return;
  }

  auto [lambda, scaled] = scale(t, gammaEps, ray.curve);
  rec.lambda = lambda;
  if (lambda && !(*lambda > EpsRational(Rational(1))))
    fail(ErrorKind::Internal, "scaling factor not > 1 on an anti-ample pair");

  std::string sigmaName = t.cfg.curves[ray.curve].name;
  SurfaceModel next = detail::contract_ray(t, ray.curve);

  // push the boundary forward; Sigma itself may not survive
  Boundary pushed;
  Boundary gammaNext;
  for (const auto& [c, v] : scaled) {
    const std::string& nm = t.cfg.curves[c].name;
    if (nm == sigmaName) continue;
    int idx = next.cfg.curve_index(nm);
    if (idx < 0) fail(ErrorKind::Internal, "boundary component vanished in the cascade");
    pushed[idx] = v;
  }
  for (const auto& [c, v] : st.gamma) {
    const std::string& nm = s.cfg.curves[c].name;
    if (nm == sigmaName) continue;
    int idx = next.cfg.curve_index(nm);
    if (idx < 0) fail(ErrorKind::Internal, "gamma component vanished in the cascade");
    gammaNext[idx] = v;
  }
  gammaNext[next.cfg.require_curve(rec.extracted)] = EpsRational(rec.gammaCoefficient);

  // tracked coefficients strictly increase
  for (const auto& [c, v] : st.boundary) {
    int idx = next.cfg.curve_index(s.cfg.curves[c].name);
    if (idx >= 0 && pushed.count(idx) && !(pushed[idx] > v))
      fail(ErrorKind::Internal, "tracked coefficient did not increase");
  }

  for (const auto& sp : next.sings) rec.singularitiesAfter.push_back(graph_str(sp.graph));
  for (const auto& [c, v] : pushed) rec.boundaryAfter.emplace_back(next.cfg.curves[c].name, v);

  st.surface = std::move(next);
  st.boundary = std::move(pushed);
  st.gamma = std::move(gammaNext);
  st.step += 1;
  st.log.push_back(std::move(rec));
}

/// Iterates hunt steps until a net, an unresolved configuration, or the
/// step limit.
inline HuntState run_hunt(SurfaceModel s, int maxSteps, Boundary delta = {}) {
  HuntState st = start_hunt(std::move(s), std::move(delta));
  for (int i = 0; i < maxSteps && !st.finished; ++i) hunt_step(st);
  return st;
}

/// The gamma sequence (21.1) read off a finished run.
inline std::vector<std::pair<std::string, Rational>> gamma_sequence(const HuntState& st) {
  std::vector<std::pair<std::string, Rational>> out;
  for (const auto& r : st.log) out.emplace_back(r.extracted, r.gammaCoefficient);
  return out;
}

}  // namespace ldp
