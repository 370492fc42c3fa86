#include "ldp/chain.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ldp;

TEST_CASE("chain indices from the worked examples") {
  CHECK(chain_index(Chain({2})) == 2);
  CHECK(chain_index(Chain({2, 5, 2, 2, 2, 2})) == 37);
  CHECK(chain_index(Chain({2, 2, 4, 2, 2, 2, 2})) == 38);
  CHECK(chain_index(Chain({2, 2, 4, 2, 2, 2, 2, 2, 2})) == 52);
  CHECK(chain_index(Chain({2, 7, 2, 2, 2, 2})) == 57);
}

TEST_CASE("discrepancies") {
  SECTION("single -3 curve") {
    auto d = discrepancies(SingGraph(Chain({3})));
    CHECK(d.e == std::vector<Rational>{rat(1, 3)});
    CHECK(d.index == 3);
  }
  SECTION("Du Val chains have zero discrepancies") {
    auto d = discrepancies(SingGraph(Chain({2, 2, 2, 2})));
    for (const auto& e : d.e) CHECK(e.is_zero());
    CHECK(d.coefficient.is_zero());
  }
  SECTION("(3,2)") {
    auto d = discrepancies(SingGraph(Chain({3, 2})));
    CHECK(d.e == std::vector<Rational>{rat(2, 5), rat(1, 5)});
    CHECK(d.coefficient == rat(2, 5));
  }
}

TEST_CASE("spectral values") {
  CHECK(spectral_value(Chain({2, 2, 2}, true)) == 0);
  CHECK(spectral_value(Chain({2, 2, 3}, true)) == 1);
  CHECK(spectral_value(Chain({3, 2}, true)) == 2);
  CHECK(spectral_value(Chain({4}, true)) == 2);
  CHECK(spectral_value(Chain({3, 2, 2}, true)) == 3);
}

TEST_CASE("suspension") {
  CHECK(suspend(Chain({3}, true)) == Chain({2, 3}, true));
  CHECK(suspend(Chain({4}, true)) == Chain({2, 4}, true));
  CHECK(spectral_value(suspend(Chain({3, 2}, true))) == 2);
}

TEST_CASE("suspension invariance of the spectral value up to index 200") {
  // All marked chains of index <= 200, generated by extension.
  std::vector<Chain> stack{Chain({2}, true), Chain({3}, true), Chain({4}, true),
                           Chain({5}, true), Chain({6}, true), Chain({7}, true)};
  for (int w = 8; w <= 200; ++w) stack.push_back(Chain({w}, true));
  int checked = 0;
  while (!stack.empty()) {
    Chain c = stack.back();
    stack.pop_back();
    if (chain_index(c) > 200) continue;
    CHECK(spectral_value(suspend(c)) == spectral_value(c));
    ++checked;
    // extend on the right; index grows strictly, so this terminates
    for (int w = 2; w <= 200; ++w) {
      Chain ext = c;
      ext.weights.push_back(w);
      if (chain_index(ext) <= 200)
        stack.push_back(ext);
      else if (w > 2)
        break;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("boundary coefficient formula") {
  // lambda = 1 gives the different (r-1)/r
  for (auto weights : std::vector<std::vector<int>>{{3}, {3, 2, 2}, {2, 5, 2}, {4, 2}}) {
    Chain c(weights, true);
    Rational r(chain_index(c));
    CHECK(boundary_coefficient_chain(c, Rational(1)) == (r - 1) / r);
  }
  // e(E, K + aC) = 1/3 + a/3 on a (3) point
  Chain three({3}, true);
  CHECK(boundary_coefficient_chain(three, rat(2, 7)) == rat(1, 3) + rat(2, 21));
  // the 21.3.3 value
  CHECK(boundary_coefficient_chain(Chain({3, 2, 2}, true), rat(60, 67)) == rat(381, 469));
}

TEST_CASE("boundary coefficient agrees with the log-pullback solve") {
  std::vector<Rational> lambdas{Rational(0), rat(1, 3), rat(1, 2), rat(2, 3), Rational(1)};
  // all marked chains of index <= 100
  std::vector<Chain> stack;
  for (int w = 2; w <= 100; ++w) stack.push_back(Chain({w}, true));
  while (!stack.empty()) {
    Chain c = stack.back();
    stack.pop_back();
    if (chain_index(c) > 100) continue;
    for (const auto& l : lambdas)
      CHECK(boundary_coefficient_chain(c, l) == chain_coefficients_with_germ(c, l).front());
    for (int w = 2; w <= 100; ++w) {
      Chain ext = c;
      ext.weights.push_back(w);
      if (chain_index(ext) <= 100)
        stack.push_back(ext);
      else if (w > 2)
        break;
    }
  }
}

TEST_CASE("star coefficients") {
  Star d4(2, Chain({2}, true), Chain({2}, true), Chain({2}, true));
  CHECK(star_coefficient(d4) == Rational(0));
  Star s(2, Chain({2}, true), Chain({2}, true), Chain({3}, true));
  CHECK(star_coefficient(s) == rat(1, 2));
  // (10.1.2.d) with j=1: third branch (2,3), 3 opposite the center
  Star t(2, Chain({2}, true), Chain({2}, true), Chain({2, 3}, true));
  CHECK(star_coefficient(t) == rat(1, 2));
}

TEST_CASE("star coefficient form and maximality over a sweep") {
  // centers <= 4, branch chains with index <= 6
  std::vector<Chain> branches;
  for (int w = 2; w <= 6; ++w) branches.push_back(Chain({std::vector<int>{w}}, true));
  for (int w1 = 2; w1 <= 3; ++w1)
    for (int w2 = 2; w2 <= 3; ++w2)
      if (chain_index(Chain({w1, w2})) <= 6) branches.push_back(Chain({w1, w2}, true));
  branches.push_back(Chain({2, 2, 2}, true));
  branches.push_back(Chain({2, 2, 2, 2, 2}, true));
  int lt_count = 0;
  for (int center = 2; center <= 4; ++center)
    for (const auto& b1 : branches)
      for (const auto& b2 : branches)
        for (const auto& b3 : branches) {
          Star s(center, b1, b2, b3);
          if (!is_log_terminal_graph(SingGraph(s))) continue;
          ++lt_count;
          Rational e = star_coefficient(s);  // asserts form and maximality
          CHECK(e < Rational(1));
        }
  CHECK(lt_count > 50);
}

TEST_CASE("flush pair bound: coefficient below a forces a > k/(k+1)") {
  // (8.0.7.2) as a computation: if e(E1, K + aD) < a then a > k/(k+1).
  std::vector<Chain> stack;
  for (int w = 2; w <= 60; ++w) stack.push_back(Chain({w}, true));
  while (!stack.empty()) {
    Chain c = stack.back();
    stack.pop_back();
    if (chain_index(c) > 60) continue;
    Rational k(spectral_value(c));
    Rational bound = k / (k + 1);
    for (const auto& a : {rat(1, 2), rat(3, 5), rat(4, 5), rat(9, 10), rat(60, 67)}) {
      if (boundary_coefficient_chain(c, a) < a) CHECK(a > bound);
    }
    for (int w = 2; w <= 60; ++w) {
      Chain ext = c;
      ext.weights.push_back(w);
      if (chain_index(ext) <= 60)
        stack.push_back(ext);
      else if (w > 2)
        break;
    }
  }
}

TEST_CASE("different") {
  CHECK(different_coefficients({BigInt(1)}) == std::vector<Rational>{Rational(0)});
  CHECK(different_coefficients({BigInt(2), BigInt(3)}) ==
        std::vector<Rational>{rat(1, 2), rat(2, 3)});
  CHECK(different_coefficients({BigInt(5)}) == std::vector<Rational>{rat(4, 5)});
}

TEST_CASE("L.1 monotonicity sweep") {
  // Raising any weight or appending a vertex strictly increases the index,
  // and every discrepancy unless the result is Du Val. Chains of length <= 6
  // restricted to weights <= 5 keep the sweep small.
  std::vector<std::vector<int>> all;
  std::vector<std::vector<int>> frontier{{}};
  for (int len = 1; len <= 6; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& base : frontier)
      for (int w = 2; w <= 5; ++w) {
        auto v = base;
        v.push_back(w);
        next.push_back(v);
        all.push_back(v);
      }
    frontier = std::move(next);
  }
  for (const auto& w : all) {
    Chain c(w);
    BigInt idx = chain_index(c);
    auto d = discrepancies(SingGraph(c));
    // raise each weight
    for (std::size_t i = 0; i < w.size(); ++i) {
      Chain up = c;
      up.weights[i] += 1;
      CHECK(chain_index(up) > idx);
      auto du = discrepancies(SingGraph(up));
      for (std::size_t j = 0; j < w.size(); ++j) CHECK(du.e[j] > d.e[j]);
    }
    // append a vertex
    Chain app = c;
    app.weights.push_back(2);
    CHECK(chain_index(app) > idx);
    if (!app.is_du_val()) {
      auto da = discrepancies(SingGraph(app));
      for (std::size_t j = 0; j < w.size(); ++j) CHECK(da.e[j] > d.e[j]);
    }
  }
}

TEST_CASE("serialization") {
  CHECK(parse_chain("2,5,2,2,2,2@L").value() == Chain({2, 5, 2, 2, 2, 2}, true));
  CHECK(parse_chain("3,2@R").value() == Chain({2, 3}, true));
  CHECK(parse_chain("4").value() == Chain({4}));
  CHECK_FALSE(parse_chain("1,2").has_value());
  CHECK_FALSE(parse_chain("2,,3").has_value());
  CHECK(chain_str(Chain({3, 2}, true)) == "3,2@L");
  auto s = parse_star("star(2; 2 | 2 | 2,3)").value();
  CHECK(s.center == 2);
  CHECK(s.branches[2].weights == std::vector<int>{2, 3});
  CHECK(star_str(s) == "star(2; 2 | 2 | 2,3)");
  CHECK_FALSE(parse_star("star(2; 2 | 2)").has_value());
}
