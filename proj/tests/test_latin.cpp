#include <algorithm>

#include "doctest.h"

#include "derange/latin.hpp"
#include "support/oracles.hpp"

using namespace derange;

namespace {

LatinSquare cyclic3_a() {
  return LatinSquare::from_rows({{1, 2, 3}, {2, 3, 1}, {3, 1, 2}});
}

LatinSquare cyclic3_b() {
  // B(i,j) = 1 + ((i + 2j - 3) mod 3)
  return LatinSquare::from_rows({{1, 3, 2}, {2, 1, 3}, {3, 2, 1}});
}

}  // namespace

TEST_CASE("is_latin distinguishes squares from defective grids") {
  CHECK(is_latin(cyclic3_a()));
  CHECK_FALSE(is_latin(LatinSquare::from_rows({{1, 2}, {1, 2}})));
  CHECK_THROWS_AS(LatinSquare::from_rows({{1, 2}, {3, 1}}), Error);
}

TEST_CASE("orthogonality of the order-3 cyclic pair") {
  const auto a = cyclic3_a();
  const auto b = cyclic3_b();
  CHECK(are_orthogonal(a, b));
  CHECK(are_orthogonal(b, a));
  CHECK_FALSE(are_orthogonal(a, a));  // only n distinct overlay pairs
  CHECK_THROWS_AS(
      are_orthogonal(a, LatinSquare::from_rows({{1, 2}, {2, 1}})),
      DegreeMismatch);
}

TEST_CASE("no orthogonal pair of order 2 exists") {
  const auto squares = oracles::all_latin_squares(2);
  REQUIRE(squares.size() == 2);
  for (const auto& a : squares)
    for (const auto& b : squares) CHECK_FALSE(are_orthogonal(a, b));
}

TEST_CASE("gamma maps the cyclic pair to the expected ordered cliques") {
  const auto pair = gamma(cyclic3_a(), cyclic3_b());
  // Row maps sigma_j: A[j][k] -> B[j][k] are the transpositions; column maps
  // omega_j are the identity and the two 3-cycles.
  REQUIRE(pair.n == 3);
  CHECK(pair.row_cliques ==
        std::vector<Permutation>{Permutation::from_cycles(3, {{2, 3}}),
                                 Permutation::from_cycles(3, {{1, 3}}),
                                 Permutation::from_cycles(3, {{1, 2}})});
  CHECK(pair.col_cliques ==
        std::vector<Permutation>{Permutation::identity(3),
                                 Permutation::from_cycles(3, {{1, 2, 3}}),
                                 Permutation::from_cycles(3, {{1, 3, 2}})});
  CHECK_NOTHROW(validate(pair));
}

TEST_CASE("gamma rejects non-orthogonal input") {
  CHECK_THROWS_AS(gamma(cyclic3_a(), cyclic3_a()), NotOrthogonal);
}

TEST_CASE("omega inverts gamma on every orthogonal pair of order 3") {
  const auto squares = oracles::all_latin_squares(3);
  REQUIRE(squares.size() == 12);
  int pairs = 0;
  for (const auto& a : squares)
    for (const auto& b : squares) {
      if (!are_orthogonal(a, b)) continue;
      ++pairs;
      const auto clique_pair = gamma(a, b);
      const auto [a2, b2] = omega(clique_pair);
      CHECK(a2 == a);
      CHECK(b2 == b);
      const auto clique_pair2 = gamma(a2, b2);
      CHECK(clique_pair2.row_cliques == clique_pair.row_cliques);
      CHECK(clique_pair2.col_cliques == clique_pair.col_cliques);
    }
  CHECK(pairs == 72);
}

TEST_CASE("omega rejects a pair sharing its two cliques") {
  const auto good = gamma(cyclic3_a(), cyclic3_b());
  OrderedCliquePair broken;
  broken.n = 3;
  broken.row_cliques = good.row_cliques;
  broken.col_cliques = good.row_cliques;  // sigma_i sigma_i^-1 = e fixes all
  CHECK_THROWS_AS(omega(broken), BrokenPair);
}

TEST_CASE("rectangle completion") {
  SUBCASE("full square comes back unchanged") {
    const auto sq = cyclic3_a();
    LatinRectangle rect(3, {sq.row_map(1), sq.row_map(2), sq.row_map(3)});
    CHECK(complete_rectangle(rect) == sq);
  }
  SUBCASE("single row extends to a Latin square") {
    const auto rect = LatinRectangle::from_rows(4, {{1, 2, 3, 4}});
    const auto sq = complete_rectangle(rect);
    CHECK(is_latin(sq));
    for (int k = 1; k <= 4; ++k) CHECK(sq.at(1, k) == k);
  }
  SUBCASE("the 2x4 example completes and the oracle agrees one exists") {
    const std::vector<std::vector<int>> rows = {{1, 2, 3, 4}, {2, 1, 4, 3}};
    const auto sq = complete_rectangle(LatinRectangle::from_rows(4, rows));
    CHECK(is_latin(sq));
    CHECK(oracles::rectangle_completable(4, rows));
  }
  SUBCASE("sampled 2-row rectangles of order 4 complete") {
    int tested = 0;
    for_each_permutation(4, [&](const Permutation& r1) {
      for_each_permutation(4, [&](const Permutation& r2) {
        if (tested >= 40) return;
        for (int k = 1; k <= 4; ++k)
          if (r1(k) == r2(k)) return;
        ++tested;
        LatinRectangle rect(4, {r1, r2});
        CHECK(is_latin(complete_rectangle(rect)));
      });
    });
    CHECK(tested == 40);
  }
  SUBCASE("invariant violations are rejected") {
    CHECK_THROWS_AS(LatinRectangle::from_rows(3, {{1, 2, 3}, {1, 3, 2}}),
                    InvalidRectangle);
    CHECK_THROWS_AS(LatinRectangle::from_rows(3, {{1, 1, 2}}),
                    InvalidRectangle);
  }
}

TEST_CASE("finite-field squares are mutually orthogonal for prime order") {
  for (int n : {3, 5, 7}) {
    const auto squares = finite_field_squares(n);
    REQUIRE(static_cast<int>(squares.size()) == n - 1);
    for (const auto& s : squares) CHECK(is_latin(s));
    for (size_t i = 0; i < squares.size(); ++i)
      for (size_t j = i + 1; j < squares.size(); ++j)
        CHECK(are_orthogonal(squares[i], squares[j]));
  }
  CHECK_THROWS_AS(finite_field_squares(6), Error);
}

TEST_CASE("independent Latin square counter matches the library's") {
  for (int n = 1; n <= 4; ++n)
    CHECK(count_latin_squares(n) == oracles::count_latin_squares(n));
  CHECK(count_latin_squares(5) == 161280);
  CHECK_THROWS_AS(count_latin_squares(6), ResourceLimit);
}

TEST_CASE("square text format round-trips and reports parse positions") {
  const auto a = cyclic3_a();
  CHECK(format_square(a) == "1 2 3\n2 3 1\n3 1 2\n");
  CHECK(parse_square(format_square(a)) == a);

  const auto pair_text = format_square_pair(a, cyclic3_b());
  const auto [pa, pb] = parse_square_pair(pair_text);
  CHECK(pa == a);
  CHECK(pb == cyclic3_b());

  SUBCASE("bad symbol names line and column") {
    try {
      parse_square("1 2 3\n2 x 1\n3 1 2\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line == 2);
      CHECK(e.col == 2);
    }
  }
  SUBCASE("repeated row symbol is rejected") {
    CHECK_THROWS_AS(parse_square("1 2 3\n2 2 1\n3 1 2\n"), ParseError);
  }
  SUBCASE("column violation is rejected") {
    CHECK_THROWS_AS(parse_square("1 2 3\n2 3 1\n1 2 3\n"), ParseError);
  }
  SUBCASE("missing separator blank line") {
    CHECK_THROWS_AS(parse_square_pair("1 2\n2 1\n"), ParseError);
  }
}

TEST_CASE("clique pair text format round-trips") {
  const auto pair = gamma(cyclic3_a(), cyclic3_b());
  const auto text = format_clique_pair(pair);
  const auto parsed = parse_clique_pair(text);
  CHECK(parsed.n == pair.n);
  CHECK(parsed.row_cliques == pair.row_cliques);
  CHECK(parsed.col_cliques == pair.col_cliques);
}
