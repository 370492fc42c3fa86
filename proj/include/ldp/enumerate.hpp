#pragma once

#include "ldp/chain.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ldp {

/// All non-Du-Val chains with index <= n, one representative per unordered
/// chain. Chain singularities only: the only non-cyclic point of group
/// order below 16 is Du Val (D4), and star group orders are not computed.
inline std::vector<Chain> enumerate_small_index(int n) {
  if (n > 30) fail(ErrorKind::GuardExceeded, "enumerate_small_index guard: n <= 30");
  std::set<std::vector<int>> seen;
  std::vector<Chain> out;
  std::vector<std::vector<int>> stack;
  for (int w = 2; w <= n; ++w) stack.push_back({w});
  while (!stack.empty()) {
    std::vector<int> w = std::move(stack.back());
    stack.pop_back();
    Chain c(w);
    if (chain_index(c) > n) continue;
    if (!c.is_du_val() && seen.insert(c.canonical_weights()).second) out.push_back(Chain(c.canonical_weights()));
    for (int next = 2; next <= n; ++next) {
      auto v = w;
      v.push_back(next);
      if (chain_index(Chain(v)) <= n)
        stack.push_back(std::move(v));
      else if (next > 2)
        break;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Chain& a, const Chain& b) { return a.weights < b.weights; });
  return out;
}

/// A one-parameter family of chains prefix + A_j + suffix with coefficient
/// (alpha j + beta) / (gamma j + delta); jMax is the largest member within
/// the enumeration cap, and `boundedByCoefficient` marks families whose
/// extension leaves the coefficient bound rather than the index cap.
struct ChainFamily {
  std::vector<int> prefix, suffix;
  int jMin = 0, jMax = 0;
  bool boundedByCoefficient = false;
  Rational alpha, beta, gammaC, deltaC;  // e(j) = (alpha j + beta)/(gammaC j + deltaC)
  std::vector<Chain> members;

  std::string pattern() const {
    auto part = [](const std::vector<int>& v) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
      }
      return s;
    };
    std::string s = "(";
    if (!prefix.empty()) s += part(prefix) + ",";
    s += "A_j";
    if (!suffix.empty()) s += "," + part(suffix);
    return s + ")";
  }
  Rational coefficient_at(int j) const {
    return (alpha * Rational(j) + beta) / (gammaC * Rational(j) + deltaC);
  }
};

/// The non-chain entries: center 2, branches (2), (2), (A_j, 3) with the
/// central curve and the -3 curve at opposite ends, coefficient 1/2.
struct StarFamily {
  int jMin = 0, jMax = 0;
  std::vector<Star> members;
};

struct SmallCoefficientList {
  std::vector<ChainFamily> families;
  std::vector<Chain> sporadics;  // chains not absorbed by a family
  std::optional<StarFamily> starFamily;
  std::vector<Star> sporadicStars;  // stars outside the known family (none expected)
};

namespace detail {

inline Star make_1012d_star(int j) {
  std::vector<int> third(j, 2);
  third.push_back(3);
  return Star(2, Chain({2}, true), Chain({2}, true), Chain(third, true));
}

/// Fits e(j) = (alpha j + beta)/(gamma j + delta) through sample points.
inline std::optional<std::array<Rational, 4>> fit_moebius(
    const std::vector<std::pair<int, Rational>>& pts) {
  if (pts.size() < 2) return std::nullopt;
  bool allEqual = true;
  for (const auto& [j, e] : pts) allEqual = allEqual && e == pts.front().second;
  if (allEqual)
    return std::array<Rational, 4>{Rational(0), pts.front().second, Rational(0), Rational(1)};
  if (pts.size() < 3) return std::nullopt;
  // gamma = 1: e_i (j_i + delta) = alpha j_i + beta
  RatMatrix m(3);
  std::vector<Rational> rhs(3);
  for (int i = 0; i < 3; ++i) {
    Rational j(pts[i].first);
    const Rational& e = pts[i].second;
    m.at(i, 0) = j;
    m.at(i, 1) = Rational(1);
    m.at(i, 2) = -e;
    rhs[i] = e * j;
  }
  if (det(m).is_zero()) return std::nullopt;
  auto x = solve(m, rhs);
  return std::array<Rational, 4>{x[0], x[1], Rational(1), x[2]};
}

}  // namespace detail

/// All log terminal singularities of coefficient 0 < e < bound (bound <=
/// 3/5), enumerated up to an index cap and compressed into parametric
/// families plus sporadic graphs.
inline SmallCoefficientList enumerate_small_coefficient(const Rational& bound, int indexCap = 200) {
  if (bound > rat(3, 5)) fail(ErrorKind::GuardExceeded, "bound must be <= 3/5");
  SmallCoefficientList out;

  // 1. brute force every chain with index <= cap and 0 < e < bound
  std::map<std::vector<int>, Rational> found;  // canonical weights -> coefficient
  {
    std::vector<std::vector<int>> stack;
    for (int w = 2; w <= indexCap; ++w) stack.push_back({w});
    while (!stack.empty()) {
      std::vector<int> w = std::move(stack.back());
      stack.pop_back();
      Chain c(w);
      if (chain_index(c) > indexCap) continue;
      if (!c.is_du_val()) {
        Rational e = discrepancies(SingGraph(c)).coefficient;
        if (e.sign() > 0 && e < bound) found.emplace(c.canonical_weights(), e);
      }
      for (int next = 2; next <= indexCap; ++next) {
        auto v = w;
        v.push_back(next);
        if (chain_index(Chain(v)) <= indexCap)
          stack.push_back(std::move(v));
        else if (next > 2)
          break;
      }
    }
  }

  // 2. group by (prefix, suffix) around a run of 2s, up to reversal
  using Sig = std::pair<std::vector<int>, std::vector<int>>;
  auto canonical_sig = [](std::vector<int> pre, std::vector<int> suf) {
    std::vector<int> rp(suf.rbegin(), suf.rend());
    std::vector<int> rs(pre.rbegin(), pre.rend());
    return std::min(Sig{pre, suf}, Sig{rp, rs});
  };
  auto chain_for = [&](const Sig& sig, int j) {
    std::vector<int> w = sig.first;
    w.insert(w.end(), j, 2);
    w.insert(w.end(), sig.second.begin(), sig.second.end());
    return Chain(w);
  };
  std::map<Sig, std::map<int, std::vector<int>>> groups;  // sig -> j -> canonical weights
  for (const auto& [w, e] : found) {
    std::vector<Sig> candidates;
    for (std::size_t i = 0; i <= w.size(); ++i) {
      // run of 2s starting at i (possibly empty)
      std::size_t k = i;
      while (k < w.size() && w[k] == 2) ++k;
      if (i > 0 && w[i - 1] == 2) continue;  // starts of maximal runs only
      candidates.push_back(canonical_sig(std::vector<int>(w.begin(), w.begin() + i),
                                         std::vector<int>(w.begin() + k, w.end())));
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& sig : candidates) {
      // recover j for this signature
      int j = static_cast<int>(w.size() - sig.first.size() - sig.second.size());
      if (j < 0) continue;
      if (chain_for(sig, j).canonical_weights() == w) groups[sig][j] = w;
    }
  }

  // 3. families = groups with >= 3 contiguous members and a verified
  // closed form, covering every j allowed by the bound and the cap
  std::set<std::vector<int>> assigned;
  std::vector<std::pair<Sig, std::vector<std::pair<int, Rational>>>> familyCandidates;
  for (const auto& [sig, byJ] : groups) {
    std::vector<std::pair<int, Rational>> pts;
    for (const auto& [j, w] : byJ)
      if (!assigned.count(w)) pts.emplace_back(j, found.at(w));
    if (pts.size() < 3) continue;
    bool contiguous = true;
    for (std::size_t i = 1; i < pts.size(); ++i)
      contiguous = contiguous && pts[i].first == pts[i - 1].first + 1;
    if (!contiguous) continue;
    familyCandidates.emplace_back(sig, std::move(pts));
  }
  // larger families first so sporadic leftovers are minimal
  std::sort(familyCandidates.begin(), familyCandidates.end(),
            [](const auto& a, const auto& b) { return a.second.size() > b.second.size(); });
  for (auto& [sig, pts] : familyCandidates) {
    std::vector<std::pair<int, Rational>> fresh;
    for (const auto& [j, e] : pts)
      if (!assigned.count(chain_for(sig, j).canonical_weights())) fresh.emplace_back(j, e);
    if (fresh.size() < 3) continue;
    auto fit = detail::fit_moebius(fresh);
    if (!fit) continue;
    auto at = [&](int j) {
      return ((*fit)[0] * Rational(j) + (*fit)[1]) / ((*fit)[2] * Rational(j) + (*fit)[3]);
    };
    bool ok = true;
    for (const auto& [j, e] : fresh) ok = ok && at(j) == e;
    if (!ok) continue;
    // completeness: the next j must fall out by coefficient or index
    int jNext = fresh.back().first + 1;
    Chain next = chain_for(sig, jNext);
    bool byCoef = false;
    if (chain_index(next) <= indexCap) {
      Rational e = discrepancies(SingGraph(next)).coefficient;
      if (e.sign() > 0 && e < bound) continue;  // group missed a member; not a family
      byCoef = true;
    }
    ChainFamily fam;
    fam.prefix = sig.first;
    fam.suffix = sig.second;
    fam.jMin = fresh.front().first;
    fam.jMax = fresh.back().first;
    fam.boundedByCoefficient = byCoef;
    fam.alpha = (*fit)[0];
    fam.beta = (*fit)[1];
    fam.gammaC = (*fit)[2];
    fam.deltaC = (*fit)[3];
    for (const auto& [j, e] : fresh) {
      fam.members.push_back(chain_for(sig, j));
      assigned.insert(chain_for(sig, j).canonical_weights());
    }
    out.families.push_back(std::move(fam));
  }
  for (const auto& [w, e] : found)
    if (!assigned.count(w)) out.sporadics.push_back(Chain(w));

  // 4. stars: sweep small centers and branches; everything below 3/5 must
  // be the center-2 / (2),(2),(A_j,3) family of coefficient 1/2
  {
    std::vector<Chain> branchPool;
    for (int w = 2; w <= 7; ++w) branchPool.push_back(Chain({w}, true));
    std::vector<std::vector<int>> stack{{2, 2}, {2, 3}, {3, 2}, {2, 2, 2}, {2, 2, 3}, {2, 2, 2, 2},
                                        {2, 2, 2, 3}, {2, 2, 2, 2, 2}, {2, 2, 2, 2, 3},
                                        {3, 3}, {2, 3, 2}};
    for (const auto& w : stack) branchPool.push_back(Chain(w, true));
    StarFamily sf;
    for (int center = 2; center <= 4; ++center)
      for (std::size_t i = 0; i < branchPool.size(); ++i)
        for (std::size_t j = i; j < branchPool.size(); ++j)
          for (std::size_t k = j; k < branchPool.size(); ++k) {
            Star st(center, branchPool[i], branchPool[j], branchPool[k]);
            if (st.is_du_val() || !is_log_terminal_graph(SingGraph(st))) continue;
            Rational e = star_coefficient(st);
            if (!(e.sign() > 0 && e < bound)) continue;
            // match against the known family shape
            bool matches = false;
            if (center == 2) {
              for (int perm = 0; perm < 3; ++perm) {
                const Chain& third = st.branches[perm];
                const Chain& o1 = st.branches[(perm + 1) % 3];
                const Chain& o2 = st.branches[(perm + 2) % 3];
                if (o1.weights != std::vector<int>{2} || o2.weights != std::vector<int>{2})
                  continue;
                std::vector<int> w = third.weights;  // adjacent-to-center first
                if (w.back() == 3 &&
                    std::all_of(w.begin(), w.end() - 1, [](int x) { return x == 2; }))
                  matches = true;
              }
            }
            if (matches)
              sf.members.push_back(st);
            else
              out.sporadicStars.push_back(st);
          }
    if (!sf.members.empty()) {
      sf.jMin = 0;
      sf.jMax = 0;
      for (const auto& st : sf.members) {
        int len = 0;
        for (const auto& b : st.branches)
          len = std::max(len, static_cast<int>(b.size()) - 1);
        sf.jMax = std::max(sf.jMax, len);
      }
      out.starFamily = std::move(sf);
    }
  }

  std::sort(out.sporadics.begin(), out.sporadics.end(),
            [](const Chain& a, const Chain& b) { return a.weights < b.weights; });
  return out;
}

/// A family (r1, r2, r3, m), m ranging over [mMin, mMax] (no mMax: all m),
/// of index 4-tuples satisfying the Bogomolov bound sum (r-1)/r <= 3.
struct BogomolovFamily {
  int r1 = 0, r2 = 0, r3 = 0;
  int mMin = 0;
  std::optional<int> mMax;
};

/// All 4-tuples of integers >= 3 with sum (r_i - 1)/r_i <= 3, grouped into
/// families over the last entry.
inline std::vector<BogomolovFamily> bogomolov_tuples() {
  std::vector<BogomolovFamily> out;
  for (int r1 = 3; r1 <= 4; ++r1)
    for (int r2 = r1; r2 <= 12; ++r2)
      for (int r3 = r2; r3 <= 12; ++r3) {
        // sum 1/r_i >= 1  <=>  1/m >= t
        Rational t = Rational(1) - rat(1, r1) - rat(1, r2) - rat(1, r3);
        BogomolovFamily f;
        f.r1 = r1;
        f.r2 = r2;
        f.r3 = r3;
        f.mMin = r3;
        if (t.sign() > 0) {
          Rational inv = Rational(1) / t;
          BigInt cap = inv.num() / inv.den();
          if (cap < r3) continue;
          f.mMax = static_cast<int>(cap.convert_to<long long>());
        } else if (t.sign() == 0) {
          // only m with 1/m >= 0: all m qualify
        }
        out.push_back(f);
      }
  return out;
}

}  // namespace ldp
