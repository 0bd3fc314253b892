#include <algorithm>
#include <set>

#include "doctest.h"

#include "derange/permutation.hpp"

using namespace derange;

TEST_CASE("composition follows right-to-left application") {
  const auto e = Permutation::identity(3);
  const auto c123 = Permutation::from_cycles(3, {{1, 2, 3}});
  const auto c132 = Permutation::from_cycles(3, {{1, 3, 2}});
  CHECK(compose(e, c123) == c123);
  CHECK(compose(c123, e) == c123);
  CHECK(compose(c123, c132) == e);
  // (1 2) then (2 3) applied right-to-left gives (1 2 3)
  const auto t12 = Permutation::from_cycles(3, {{1, 2}});
  const auto t23 = Permutation::from_cycles(3, {{2, 3}});
  CHECK(compose(t12, t23) == c123);
  CHECK_THROWS_AS(compose(t12, Permutation::identity(4)), DegreeMismatch);
}

TEST_CASE("n_fixed counts fixed points of sigma tau^-1") {
  const auto sigma = Permutation::from_cycles(3, {{1, 2, 3}});
  const auto tau = Permutation::from_cycles(3, {{1, 2}});
  CHECK(n_fixed(sigma, sigma) == 3);
  CHECK(n_fixed(sigma, tau) == 1);
  const auto d = Permutation::from_cycles(4, {{1, 2}, {3, 4}});
  CHECK(n_fixed(d, Permutation::identity(4)) == 0);
  CHECK_THROWS_AS(n_fixed(sigma, d), DegreeMismatch);
}

TEST_CASE("derangement and near-derangement predicates") {
  CHECK_FALSE(Permutation::identity(3).is_derangement());
  CHECK_FALSE(Permutation::identity(3).is_near_derangement());
  CHECK(Permutation::from_cycles(4, {{1, 2}, {3, 4}}).is_derangement());
  const auto t = Permutation::from_cycles(3, {{1, 2}});
  CHECK(t.is_near_derangement());
  CHECK(t.sole_fixed_point() == 3);
  CHECK_THROWS_AS(Permutation::identity(3).sole_fixed_point(), Error);
}

TEST_CASE("cycle types are canonical partitions") {
  CHECK(cycle_type(Permutation::identity(6)).parts ==
        std::vector<int>{1, 1, 1, 1, 1, 1});
  CHECK(cycle_type(Permutation::from_cycles(6, {{1, 2}, {3, 4}, {5, 6}})).parts ==
        std::vector<int>{2, 2, 2});
  CHECK(cycle_type(Permutation::from_cycles(6, {{1, 2, 3, 4}, {5, 6}})).parts ==
        std::vector<int>{4, 2});
  CHECK(cycle_type(Permutation::from_cycles(6, {{1, 2, 3, 4}, {5, 6}})).str() ==
        "4,2");
}

TEST_CASE("group enumeration is lexicographic and complete") {
  std::vector<Permutation> perms;
  for_each_permutation(3, [&](const Permutation& p) { perms.push_back(p); });
  REQUIRE(perms.size() == 6);
  CHECK(perms.front() == Permutation::identity(3));
  CHECK(perms.back().str() == "3 2 1");
  CHECK(std::is_sorted(perms.begin(), perms.end()));

  std::uint64_t count6 = 0;
  for_each_permutation(6, [&](const Permutation&) { ++count6; });
  CHECK(count6 == 720);

  std::vector<Permutation> single;
  for_each_permutation(1, [&](const Permutation& p) { single.push_back(p); });
  CHECK(single == std::vector<Permutation>{Permutation::identity(1)});

  CHECK_THROWS_AS(for_each_permutation(0, [](const Permutation&) {}), Error);
  CHECK_THROWS_AS(for_each_permutation(13, [](const Permutation&) {}), Error);
}

TEST_CASE("derangement counts match brute force") {
  CHECK(count_derangements(1) == 0);
  CHECK(count_derangements(4) == 9);
  CHECK(count_derangements(6) == 265);
  for (int n = 1; n <= 7; ++n) {
    std::uint64_t brute = 0;
    for_each_permutation(n, [&](const Permutation& p) {
      brute += p.is_derangement();
    });
    CHECK(count_derangements(n) == brute);
  }
}

TEST_CASE("lex rank and unrank invert each other") {
  for (int n : {1, 3, 5}) {
    std::uint64_t expect = 0;
    for_each_permutation(n, [&](const Permutation& p) {
      CHECK(lex_rank(p) == expect);
      CHECK(lex_unrank(n, expect) == p);
      ++expect;
    });
  }
  CHECK_THROWS_AS(lex_unrank(3, 6), Error);
}

TEST_CASE("parser accepts one-line notation and rejects non-bijections") {
  CHECK(Permutation::parse("2 3 1") ==
        Permutation::from_cycles(3, {{1, 2, 3}}));
  CHECK(Permutation::parse("2 3 1").str() == "2 3 1");
  CHECK_THROWS_AS(Permutation::parse("1 1 3"), InvalidPermutation);
  CHECK_THROWS_AS(Permutation::parse("0 1 2"), InvalidPermutation);
  CHECK_THROWS_AS(Permutation::parse("1 2 4"), InvalidPermutation);
  CHECK_THROWS_AS(Permutation::parse("a b"), InvalidPermutation);
  CHECK_THROWS_AS(Permutation::parse(""), InvalidPermutation);
}

TEST_CASE("permutation list line format round-trips") {
  const std::vector<Permutation> perms = {
      Permutation::identity(3), Permutation::from_cycles(3, {{1, 2, 3}})};
  const auto line = format_permutation_list(perms);
  CHECK(line == "1 2 3|2 3 1");
  CHECK(parse_permutation_list(line) == perms);
}

TEST_CASE("bijectivity of every generated permutation") {
  for (int n = 1; n <= 5; ++n)
    for_each_permutation(n, [&](const Permutation& p) {
      std::set<int> images;
      for (int x = 1; x <= n; ++x) images.insert(p(x));
      CHECK(images.size() == static_cast<size_t>(n));
      CHECK(*images.begin() == 1);
      CHECK(*images.rbegin() == n);
    });
}

TEST_CASE("inverse is an involution (exhaustive to degree 6)") {
  for (int n = 1; n <= 6; ++n)
    for_each_permutation(n, [&](const Permutation& p) {
      CHECK(p.inverse().inverse() == p);
      CHECK(compose(p, p.inverse()) == Permutation::identity(n));
    });
}

TEST_CASE("fixed-point counts are right-translation invariant on S_4") {
  const auto perms = all_permutations(4);
  for (const auto& sigma : perms)
    for (const auto& tau : perms)
      for (const auto& rho : perms)
        CHECK(n_fixed(compose(sigma, rho), compose(tau, rho)) ==
              n_fixed(sigma, tau));
}

TEST_CASE("conjugation preserves cycle type on S_4") {
  const auto perms = all_permutations(4);
  for (const auto& sigma : perms)
    for (const auto& omega : perms)
      CHECK(cycle_type(compose(compose(omega, sigma), omega.inverse())) ==
            cycle_type(sigma));
}

TEST_CASE("parity matches transposition count") {
  CHECK(Permutation::identity(4).is_even());
  CHECK_FALSE(Permutation::from_cycles(4, {{1, 2}}).is_even());
  CHECK(Permutation::from_cycles(5, {{1, 2, 3, 4, 5}}).is_even());
  CHECK_FALSE(Permutation::from_cycles(5, {{1, 2}, {3, 4, 5}}).is_even());
}
