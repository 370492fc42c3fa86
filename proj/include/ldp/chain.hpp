#pragma once

#include "ldp/matrix.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ldp {

/// Dual graph of a cyclic quotient singularity: a chain of exceptional
/// curves, weights[i] = -E_i^2 >= 2. When `marked` is set the left end
/// (weights.front()) is the curve adjacent to a transverse curve germ;
/// chains are canonicalized with the marked end on the left.
struct Chain {
  std::vector<int> weights;
  bool marked = false;

  Chain() = default;
  explicit Chain(std::vector<int> w, bool m = false) : weights(std::move(w)), marked(m) {
    validate();
  }

  std::size_t size() const { return weights.size(); }
  bool is_du_val() const {
    return std::all_of(weights.begin(), weights.end(), [](int w) { return w == 2; });
  }
  Chain reversed() const {
    Chain c = *this;
    std::reverse(c.weights.begin(), c.weights.end());
    return c;
  }
  /// Unordered-chain canonical form (marking dropped).
  std::vector<int> canonical_weights() const {
    std::vector<int> rev(weights.rbegin(), weights.rend());
    return std::min(weights, rev);
  }

  void validate() const {
    if (weights.empty()) fail(ErrorKind::Parse, "chain must be nonempty");
    for (int w : weights)
      if (w < 2) fail(ErrorKind::Parse, "chain weight < 2");
  }

  friend bool operator==(const Chain& a, const Chain& b) {
    return a.weights == b.weights && a.marked == b.marked;
  }
};

/// Non-cyclic log terminal dual graph: central curve of weight `center`
/// meeting three chains, each stored with its center-adjacent curve first.
struct Star {
  int center = 2;
  std::vector<Chain> branches;  // exactly three

  Star() = default;
  Star(int c, Chain b1, Chain b2, Chain b3) : center(c) {
    branches = {std::move(b1), std::move(b2), std::move(b3)};
    if (center < 2) fail(ErrorKind::Parse, "star center weight < 2");
  }

  bool is_du_val() const {
    return center == 2 && branches[0].is_du_val() && branches[1].is_du_val() &&
           branches[2].is_du_val();
  }

  friend bool operator==(const Star& a, const Star& b) {
    if (a.center != b.center) return false;
    auto key = [](const Star& s) {
      std::vector<std::vector<int>> v;
      for (const auto& br : s.branches) v.push_back(br.weights);
      std::sort(v.begin(), v.end());
      return v;
    };
    return key(a) == key(b);
  }
};

struct SmoothPoint {
  friend bool operator==(const SmoothPoint&, const SmoothPoint&) { return true; }
};

using SingGraph = std::variant<SmoothPoint, Chain, Star>;

/// Index of a cyclic singularity through the continued-fraction recurrence
/// d_0 = 1, d_1 = w_1, d_k = w_k d_{k-1} - d_{k-2}. Equals |det| of the
/// intersection matrix.
inline BigInt chain_index(const Chain& c) {
  BigInt prev(1), cur(c.weights[0]);
  for (std::size_t i = 1; i < c.size(); ++i) {
    BigInt next = BigInt(c.weights[i]) * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Vertex count of a graph and its intersection matrix (diag -w, adjacent 1).
/// Star layout: vertex 0 is the center, branches follow in order, each with
/// its adjacent curve first.
inline RatMatrix intersection_matrix(const SingGraph& g) {
  if (std::holds_alternative<SmoothPoint>(g)) return RatMatrix(0);
  if (const auto* c = std::get_if<Chain>(&g)) {
    RatMatrix m(c->size());
    for (std::size_t i = 0; i < c->size(); ++i) {
      m.at(i, i) = Rational(-c->weights[i]);
      if (i + 1 < c->size()) m.at(i, i + 1) = m.at(i + 1, i) = Rational(1);
    }
    return m;
  }
  const Star& s = std::get<Star>(g);
  std::size_t n = 1;
  for (const auto& b : s.branches) n += b.size();
  RatMatrix m(n);
  m.at(0, 0) = Rational(-s.center);
  std::size_t base = 1;
  for (const auto& b : s.branches) {
    m.at(0, base) = m.at(base, 0) = Rational(1);
    for (std::size_t i = 0; i < b.size(); ++i) {
      m.at(base + i, base + i) = Rational(-b.weights[i]);
      if (i + 1 < b.size()) m.at(base + i, base + i + 1) = m.at(base + i + 1, base + i) = Rational(1);
    }
    base += b.size();
  }
  return m;
}

/// Discrepancy data of a log terminal graph: e solves M e = (2 - w) so that
/// K + sum e_i E_i is trivial on every exceptional curve.
struct DiscrepancyData {
  std::vector<Rational> e;  // per curve, graph layout order
  Rational coefficient;     // max of e
  BigInt detAbs;            // |det| of the intersection matrix
  BigInt index;             // chains: = detAbs; stars: group order not computed
};

inline std::vector<int> graph_weights(const SingGraph& g) {
  if (std::holds_alternative<SmoothPoint>(g)) return {};
  if (const auto* c = std::get_if<Chain>(&g)) return c->weights;
  const Star& s = std::get<Star>(g);
  std::vector<int> w{s.center};
  for (const auto& b : s.branches) w.insert(w.end(), b.weights.begin(), b.weights.end());
  return w;
}

inline DiscrepancyData discrepancies(const SingGraph& g) {
  if (std::holds_alternative<SmoothPoint>(g))
    fail(ErrorKind::Internal, "discrepancies of a smooth point");
  RatMatrix m = intersection_matrix(g);
  std::vector<int> w = graph_weights(g);
  std::vector<Rational> rhs(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) rhs[j] = Rational(2 - w[j]);
  DiscrepancyData d;
  d.e = solve(m, std::move(rhs));
  d.coefficient = Rational(0);
  for (const auto& x : d.e) d.coefficient = std::max(d.coefficient, x);
  Rational dt = det(m);
  d.detAbs = dt.sign() < 0 ? BigInt(-dt.num()) : dt.num();
  if (dt.den() != 1) fail(ErrorKind::Internal, "non-integral determinant");
  if (const auto* c = std::get_if<Chain>(&g)) {
    d.index = chain_index(*c);
    if (d.index != d.detAbs) fail(ErrorKind::Internal, "chain index != |det|");
  } else {
    d.index = d.detAbs;
  }
  return d;
}

/// True for every graph whose discrepancy coefficients all lie in [0,1).
inline bool is_log_terminal_graph(const SingGraph& g) {
  if (std::holds_alternative<SmoothPoint>(g)) return true;
  if (!is_negative_definite(intersection_matrix(g))) return false;
  DiscrepancyData d = discrepancies(g);
  for (const auto& x : d.e)
    if (x.sign() < 0 || x >= Rational(1)) return false;
  return true;
}

/// Spectral value k of a marked chain: e(E_1, K) = k/r with r the index.
/// Integral for every chain; a failure indicates an engine bug.
inline BigInt spectral_value(const Chain& c) {
  if (!c.marked) fail(ErrorKind::Parse, "spectral value needs a marked chain");
  DiscrepancyData d = discrepancies(SingGraph(c));
  Rational k = d.e.front() * Rational(d.index);
  if (!k.is_integer()) fail(ErrorKind::NonIntegral, "spectral value not integral");
  return k.num();
}

/// Adds a 2 on the marked (left) end; the spectral value is invariant.
inline Chain suspend(const Chain& c) {
  if (!c.marked) fail(ErrorKind::Parse, "suspend needs a marked chain");
  Chain s = c;
  s.weights.insert(s.weights.begin(), 2);
  return s;
}

/// e(E_1, K + lambda D) for a germ D meeting E_1 normally:
/// lambda (r-1)/r + (1 - lambda) k/r.
inline Rational boundary_coefficient_chain(const Chain& c, const Rational& lambda) {
  if (!c.marked) fail(ErrorKind::Parse, "boundary coefficient needs a marked chain");
  Rational r(chain_index(c));
  Rational k(spectral_value(c));
  return lambda * (r - 1) / r + (Rational(1) - lambda) * k / r;
}

/// Coefficient vector of K + lambda D over a marked chain, D a transverse
/// germ at E_1. Independent linear-solve route used as the oracle for
/// boundary_coefficient_chain.
inline std::vector<Rational> chain_coefficients_with_germ(const Chain& c, const Rational& lambda) {
  RatMatrix m = intersection_matrix(SingGraph(c));
  std::vector<Rational> rhs(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) rhs[j] = Rational(2 - c.weights[j]);
  rhs[0] -= lambda;
  return solve(m, std::move(rhs));
}

/// Coefficient of the central curve of a star; always of the form k/(k+1)
/// and maximal among the graph's discrepancies.
inline Rational star_coefficient(const Star& s) {
  DiscrepancyData d = discrepancies(SingGraph(s));
  const Rational& e0 = d.e.front();
  if (e0 != d.coefficient)
    fail(ErrorKind::Internal, "central curve coefficient is not maximal");
  if (!e0.is_zero()) {
    // e0 = k/(k+1) iff num + 1 == den.
    if (e0.num() + 1 != e0.den())
      fail(ErrorKind::Internal, "star coefficient not of the form k/(k+1): " + e0.str());
  }
  return e0;
}

/// Different of K_S + C along C: one coefficient (r-1)/r per singular point.
inline std::vector<Rational> different_coefficients(const std::vector<BigInt>& indices) {
  std::vector<Rational> out;
  out.reserve(indices.size());
  for (const auto& r : indices) {
    if (r < 1) fail(ErrorKind::Parse, "index must be >= 1");
    out.push_back(Rational(r - 1, r));
  }
  return out;
}

// -- serialization ----------------------------------------------------------

/// "2,5,2,2" with optional "@L" / "@R" end marker.
inline std::optional<Chain> parse_chain(std::string_view text) {
  bool marked = false, reverse = false;
  if (text.size() >= 2 && text[text.size() - 2] == '@') {
    char end = text.back();
    if (end == 'L') marked = true;
    else if (end == 'R') marked = reverse = true;
    else return std::nullopt;
    text.remove_suffix(2);
  }
  std::vector<int> w;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    std::string_view tok = text.substr(pos, comma == std::string_view::npos ? comma : comma - pos);
    if (tok.empty()) return std::nullopt;
    int v = 0;
    for (char ch : tok) {
      if (ch < '0' || ch > '9') return std::nullopt;
      v = v * 10 + (ch - '0');
    }
    w.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (w.empty()) return std::nullopt;
  for (int v : w)
    if (v < 2) return std::nullopt;
  if (reverse) std::reverse(w.begin(), w.end());
  return Chain(std::move(w), marked);
}

inline std::string chain_str(const Chain& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c.weights[i]);
  }
  if (c.marked) s += "@L";
  return s;
}

/// "star(2; 2 | 2 | 2,3)" - branches listed with the center-adjacent curve
/// first.
inline std::optional<Star> parse_star(std::string_view text) {
  auto strip = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  text = strip(text);
  if (!text.starts_with("star(") || !text.ends_with(")")) return std::nullopt;
  text = text.substr(5, text.size() - 6);
  auto semi = text.find(';');
  if (semi == std::string_view::npos) return std::nullopt;
  std::string_view center_tok = strip(text.substr(0, semi));
  int center = 0;
  for (char ch : center_tok) {
    if (ch < '0' || ch > '9') return std::nullopt;
    center = center * 10 + (ch - '0');
  }
  std::string_view rest = text.substr(semi + 1);
  std::vector<Chain> branches;
  std::size_t pos = 0;
  while (true) {
    auto bar = rest.find('|', pos);
    std::string_view tok =
        strip(bar == std::string_view::npos ? rest.substr(pos) : rest.substr(pos, bar - pos));
    auto c = parse_chain(tok);
    if (!c) return std::nullopt;
    c->marked = true;  // adjacent-to-center end is the left end
    branches.push_back(std::move(*c));
    if (bar == std::string_view::npos) break;
    pos = bar + 1;
  }
  if (branches.size() != 3 || center < 2) return std::nullopt;
  return Star(center, branches[0], branches[1], branches[2]);
}

inline std::string star_str(const Star& s) {
  std::string out = "star(" + std::to_string(s.center) + "; ";
  for (std::size_t i = 0; i < 3; ++i) {
    if (i) out += " | ";
    Chain plain = s.branches[i];
    plain.marked = false;
    out += chain_str(plain);
  }
  out += ")";
  return out;
}

inline std::string graph_str(const SingGraph& g) {
  if (std::holds_alternative<SmoothPoint>(g)) return "smooth";
  if (const auto* c = std::get_if<Chain>(&g)) return chain_str(*c);
  return star_str(std::get<Star>(g));
}

}  // namespace ldp
