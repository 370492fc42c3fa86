#include "ldp/enumerate.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace ldp;

TEST_CASE("small index enumeration") {
  SECTION("(10.7): non-Du-Val singularities of index at most 7") {
    auto got = enumerate_small_index(7);
    std::set<std::vector<int>> expect{
        Chain({7}).canonical_weights(),       Chain({6}).canonical_weights(),
        Chain({5}).canonical_weights(),       Chain({4}).canonical_weights(),
        Chain({3}).canonical_weights(),       Chain({4, 2}).canonical_weights(),
        Chain({3, 2}).canonical_weights(),    Chain({3, 2, 2}).canonical_weights()};
    std::set<std::vector<int>> gotSet;
    for (const auto& c : got) gotSet.insert(c.canonical_weights());
    CHECK(gotSet == expect);
  }
  SECTION("n = 2 has only Du Val points") { CHECK(enumerate_small_index(2).empty()); }
  SECTION("n = 3") {
    auto got = enumerate_small_index(3);
    REQUIRE(got.size() == 1);
    CHECK(got[0].weights == std::vector<int>{3});
  }
  SECTION("guard") { CHECK_THROWS_AS(enumerate_small_index(31), Error); }
}

namespace {

std::set<std::vector<int>> expand(const SmallCoefficientList& list, int cap) {
  std::set<std::vector<int>> all;
  for (const auto& f : list.families)
    for (const auto& m : f.members) all.insert(m.canonical_weights());
  for (const auto& s : list.sporadics) all.insert(s.canonical_weights());
  (void)cap;
  return all;
}

}  // namespace

TEST_CASE("small coefficient list (10.1) at bound 3/5") {
  const int cap = 200;
  auto list = enumerate_small_coefficient(rat(3, 5), cap);

  // expected chains: expand the (10.1) items up to the index cap
  std::set<std::vector<int>> expect;
  auto add = [&](std::vector<int> w) {
    Chain c(w);
    if (chain_index(c) <= cap) expect.insert(c.canonical_weights());
  };
  for (int j = 0;; ++j) {  // (3, A_j), e=(j+1)/(2j+3) < 1/2
    std::vector<int> w{3};
    w.insert(w.end(), j, 2);
    if (chain_index(Chain(w)) > cap) break;
    add(w);
  }
  add({4});
  for (int j = 0;; ++j) {  // (3, A_j, 3), e = 1/2
    std::vector<int> w{3};
    w.insert(w.end(), j, 2);
    w.push_back(3);
    if (chain_index(Chain(w)) > cap) break;
    add(w);
  }
  add({2, 3, 2});
  for (int j = 2; j <= 4; ++j) {  // (2, 3, A_j), e = (2j+2)/(3j+5)
    std::vector<int> w{2, 3};
    w.insert(w.end(), j, 2);
    add(w);
  }
  add({4, 2});

  CHECK(expand(list, cap) == expect);

  // coefficients as stated in (10.1)
  for (const auto& f : list.families) {
    for (int j = f.jMin; j <= f.jMax; ++j) {
      Chain c = f.members[j - f.jMin];
      CHECK(f.coefficient_at(j) == discrepancies(SingGraph(c)).coefficient);
    }
  }
  // the (3,A_j) family carries e = (j+1)/(2j+3)
  bool foundThree = false;
  for (const auto& f : list.families) {
    if (f.prefix.empty() && f.suffix == std::vector<int>{3} && f.jMin == 0) {
      foundThree = true;
      for (int j = f.jMin; j <= std::min(f.jMax, 6); ++j)
        CHECK(f.coefficient_at(j) == rat(j + 1, 2 * j + 3));
    }
  }
  CHECK(foundThree);

  // the star family (10.1.2.d) and nothing else non-cyclic
  REQUIRE(list.starFamily.has_value());
  CHECK(list.sporadicStars.empty());
  for (const auto& st : list.starFamily->members) CHECK(star_coefficient(st) == rat(1, 2));
  CHECK(list.starFamily->members.size() >= 3);
}

TEST_CASE("small coefficient list at tighter bounds") {
  SECTION("bound 1/3 is empty") {
    auto list = enumerate_small_coefficient(rat(1, 3), 50);
    CHECK(list.families.empty());
    CHECK(list.sporadics.empty());
    CHECK_FALSE(list.starFamily.has_value());
  }
  SECTION("bound 2/5 contains only (3)") {
    auto list = enumerate_small_coefficient(rat(2, 5), 50);
    auto all = expand(list, 50);
    CHECK(all == std::set<std::vector<int>>{{3}});
    CHECK_FALSE(list.starFamily.has_value());
  }
  SECTION("guard above 3/5") {
    CHECK_THROWS_AS(enumerate_small_coefficient(rat(2, 3), 50), Error);
  }
}

TEST_CASE("bogomolov tuples reproduce (10.5)") {
  auto fams = bogomolov_tuples();
  auto find = [&](int a, int b, int c) -> const BogomolovFamily* {
    for (const auto& f : fams)
      if (f.r1 == a && f.r2 == b && f.r3 == c) return &f;
    return nullptr;
  };
  // (a) (3,3,3,m) unbounded
  const auto* a = find(3, 3, 3);
  REQUIRE(a != nullptr);
  CHECK_FALSE(a->mMax.has_value());
  // (b) (3,3,4,m), 4 <= m <= 12
  const auto* b = find(3, 3, 4);
  REQUIRE(b != nullptr);
  CHECK(b->mMin == 4);
  CHECK(b->mMax == 12);
  // (c) (3,3,5,m), 5 <= m <= 7
  const auto* c = find(3, 3, 5);
  REQUIRE(c != nullptr);
  CHECK(c->mMax == 7);
  // (d) (3,3,6,6)
  const auto* d = find(3, 3, 6);
  REQUIRE(d != nullptr);
  CHECK(d->mMax == 6);
  // (e) (3,4,4,m), 4 <= m <= 6
  const auto* e = find(3, 4, 4);
  REQUIRE(e != nullptr);
  CHECK(e->mMax == 6);
  // (f) (4,4,4,4)
  const auto* f = find(4, 4, 4);
  REQUIRE(f != nullptr);
  CHECK(f->mMax == 4);
  // nothing else
  CHECK(fams.size() == 6);
  // spot checks
  bool has3348 = false, has33413 = false;
  for (const auto& fam : fams) {
    if (fam.r1 == 3 && fam.r2 == 3 && fam.r3 == 4) {
      has3348 = fam.mMin <= 8 && 8 <= *fam.mMax;
      has33413 = *fam.mMax >= 13;
    }
  }
  CHECK(has3348);
  CHECK_FALSE(has33413);
}
