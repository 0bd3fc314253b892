#ifndef DERANGE_LATIN_HPP
#define DERANGE_LATIN_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "derange/errors.hpp"
#include "derange/permutation.hpp"

namespace derange {

// n x n array with entries in {1,...,n}.  Construction checks the symbol
// range only; is_latin() checks the actual row/column property so that
// defective squares remain representable for testing and error reporting.
class LatinSquare {
 public:
  LatinSquare(int n, std::vector<int> cells_row_major);
  static LatinSquare from_rows(const std::vector<std::vector<int>>& rows);

  int order() const { return n_; }
  // 1-based row/column; returns the 1-based symbol.
  int at(int row, int col) const {
    return cells_[static_cast<size_t>(row - 1) * n_ + (col - 1)] + 1;
  }
  Permutation row_map(int row) const;     // k -> A[row][k]
  Permutation column_map(int col) const;  // k -> A[k][col]

  friend bool operator==(const LatinSquare&, const LatinSquare&) = default;

 private:
  int n_;
  std::vector<std::uint8_t> cells_;  // 0-based symbols
};

bool is_latin(const LatinSquare& a);

// True iff overlaying a and b yields all n^2 ordered symbol pairs.
bool are_orthogonal(const LatinSquare& a, const LatinSquare& b);

// m <= n rows, each a permutation of {1..n}, no two rows agreeing in any
// column.  Construction validates the invariant.
class LatinRectangle {
 public:
  LatinRectangle(int n, std::vector<Permutation> rows);
  static LatinRectangle from_rows(int n,
                                  const std::vector<std::vector<int>>& rows);

  int order() const { return n_; }
  int row_count() const { return static_cast<int>(rows_.size()); }
  const std::vector<Permutation>& rows() const { return rows_; }

 private:
  int n_;
  std::vector<Permutation> rows_;
};

// Extends the rectangle to a full Latin square.  Each new row is found as a
// perfect matching between columns and their unused symbols; Hall's
// condition guarantees one exists, so failure on valid input is an internal
// error, not a user error.
LatinSquare complete_rectangle(const LatinRectangle& rect);

// The two sides of the Gamma/Omega correspondence: sigma_j maps row j of A
// onto row j of B, omega_j maps column j of A onto column j of B.
struct OrderedCliquePair {
  int n = 0;
  std::vector<Permutation> row_cliques;  // sigma_1..sigma_n
  std::vector<Permutation> col_cliques;  // omega_1..omega_n
};

// Throws BrokenPair unless both lists are cliques in the derangement graph
// and every cross product sigma_i omega_j^-1 has exactly one fixed point.
void validate(const OrderedCliquePair& pair);

// Orthogonal square pair -> disconnected ordered clique pair.
OrderedCliquePair gamma(const LatinSquare& a, const LatinSquare& b);

// Inverse correspondence; recovers (A,B) from the unique agreement points.
std::pair<LatinSquare, LatinSquare> omega(const OrderedCliquePair& pair);

// A_k(i,j) = 1 + ((i-1) + k(j-1) mod n) for k = 1..n-1; pairwise orthogonal
// when n is prime.
std::vector<LatinSquare> finite_field_squares(int n);

// Row-by-row backtracking over column masks; independent of the clique
// machinery, which is exactly why the clique counts are checked against it.
std::uint64_t count_latin_squares(int n);
void enumerate_latin_squares(int n,
                             const std::function<void(const LatinSquare&)>& fn);

// --- text formats -------------------------------------------------------
// Square: n lines of n space-separated integers.
// Pair file: two squares separated by one blank line.
// Ordered clique pair: two permutation-list lines (rows, then columns).

std::string format_square(const LatinSquare& a);
LatinSquare parse_square(std::string_view text);
// Rectangle: m <= n rows of n symbols; order inferred from the row length.
LatinRectangle parse_rectangle(std::string_view text);
std::string format_square_pair(const LatinSquare& a, const LatinSquare& b);
std::pair<LatinSquare, LatinSquare> parse_square_pair(std::string_view text);
std::string format_clique_pair(const OrderedCliquePair& pair);
OrderedCliquePair parse_clique_pair(std::string_view text);

}  // namespace derange

#endif
