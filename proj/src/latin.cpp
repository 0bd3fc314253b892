#include "derange/latin.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <sstream>

#include "derange/exactla.hpp"

namespace derange {

namespace {

void check_order(int n) {
  if (n < 1 || n > kMaxDegree)
    throw Error("order " + std::to_string(n) + " outside supported range 1.." +
                std::to_string(kMaxDegree));
}

void check_same_order(int a, int b) {
  if (a != b)
    throw DegreeMismatch("orders " + std::to_string(a) + " and " +
                         std::to_string(b) + " differ");
}

}  // namespace

LatinSquare::LatinSquare(int n, std::vector<int> cells) : n_(n) {
  check_order(n);
  if (cells.size() != static_cast<size_t>(n) * n)
    throw Error("cell count does not match order");
  cells_.resize(cells.size());
  for (size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] < 1 || cells[i] > n)
      throw Error("symbol " + std::to_string(cells[i]) + " outside 1.." +
                  std::to_string(n));
    cells_[i] = static_cast<std::uint8_t>(cells[i] - 1);
  }
}

LatinSquare LatinSquare::from_rows(const std::vector<std::vector<int>>& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<int> cells;
  cells.reserve(static_cast<size_t>(n) * n);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n)
      throw Error("ragged rows in square");
    cells.insert(cells.end(), row.begin(), row.end());
  }
  return LatinSquare(n, std::move(cells));
}

Permutation LatinSquare::row_map(int row) const {
  std::vector<int> images(static_cast<size_t>(n_));
  for (int k = 1; k <= n_; ++k) images[k - 1] = at(row, k);
  return Permutation::from_images(images);
}

Permutation LatinSquare::column_map(int col) const {
  std::vector<int> images(static_cast<size_t>(n_));
  for (int k = 1; k <= n_; ++k) images[k - 1] = at(k, col);
  return Permutation::from_images(images);
}

bool is_latin(const LatinSquare& a) {
  const int n = a.order();
  for (int i = 1; i <= n; ++i) {
    unsigned row_seen = 0, col_seen = 0;
    for (int k = 1; k <= n; ++k) {
      row_seen |= 1u << (a.at(i, k) - 1);
      col_seen |= 1u << (a.at(k, i) - 1);
    }
    const unsigned full = (n == 32) ? ~0u : (1u << n) - 1;
    if (row_seen != full || col_seen != full) return false;
  }
  return true;
}

bool are_orthogonal(const LatinSquare& a, const LatinSquare& b) {
  check_same_order(a.order(), b.order());
  const int n = a.order();
  std::vector<bool> seen(static_cast<size_t>(n) * n, false);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const size_t pair = static_cast<size_t>(a.at(i, j) - 1) * n +
                          (b.at(i, j) - 1);
      if (seen[pair]) return false;
      seen[pair] = true;
    }
  return true;
}

LatinRectangle::LatinRectangle(int n, std::vector<Permutation> rows) : n_(n) {
  check_order(n);
  if (static_cast<int>(rows.size()) > n)
    throw InvalidRectangle("more rows than the order allows");
  for (const auto& row : rows)
    if (row.degree() != n)
      throw InvalidRectangle("row degree differs from rectangle order");
  for (size_t r = 0; r + 1 < rows.size(); ++r)
    for (size_t s = r + 1; s < rows.size(); ++s)
      for (int k = 1; k <= n; ++k)
        if (rows[r](k) == rows[s](k))
          throw InvalidRectangle("rows " + std::to_string(r + 1) + " and " +
                                 std::to_string(s + 1) + " agree in column " +
                                 std::to_string(k));
  rows_ = std::move(rows);
}

LatinRectangle LatinRectangle::from_rows(
    int n, const std::vector<std::vector<int>>& rows) {
  std::vector<Permutation> perms;
  perms.reserve(rows.size());
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n)
      throw InvalidRectangle("row length differs from rectangle order");
    try {
      perms.push_back(Permutation::from_images(row));
    } catch (const InvalidPermutation& e) {
      throw InvalidRectangle(e.what());
    }
  }
  return LatinRectangle(n, std::move(perms));
}

namespace {

// Augmenting-path search for the column -> symbol assignment of one new row.
bool try_assign(int col, const std::vector<unsigned>& allowed,
                std::vector<int>& symbol_of_col, std::vector<int>& col_of_symbol,
                unsigned& visited, int n) {
  for (int s = 0; s < n; ++s) {
    if (!(allowed[static_cast<size_t>(col)] & (1u << s))) continue;
    if (visited & (1u << s)) continue;
    visited |= 1u << s;
    if (col_of_symbol[static_cast<size_t>(s)] < 0 ||
        try_assign(col_of_symbol[static_cast<size_t>(s)], allowed,
                   symbol_of_col, col_of_symbol, visited, n)) {
      symbol_of_col[static_cast<size_t>(col)] = s;
      col_of_symbol[static_cast<size_t>(s)] = col;
      return true;
    }
  }
  return false;
}

}  // namespace

LatinSquare complete_rectangle(const LatinRectangle& rect) {
  const int n = rect.order();
  std::vector<Permutation> rows = rect.rows();

  // allowed[k] = symbols not yet used in column k+1 (0-based bitmask).
  std::vector<unsigned> allowed(static_cast<size_t>(n), (1u << n) - 1);
  for (const auto& row : rows)
    for (int k = 1; k <= n; ++k)
      allowed[static_cast<size_t>(k - 1)] &= ~(1u << (row(k) - 1));

  while (static_cast<int>(rows.size()) < n) {
    std::vector<int> symbol_of_col(static_cast<size_t>(n), -1);
    std::vector<int> col_of_symbol(static_cast<size_t>(n), -1);
    for (int col = 0; col < n; ++col) {
      unsigned visited = 0;
      if (!try_assign(col, allowed, symbol_of_col, col_of_symbol, visited, n))
        throw VerificationFailure(
            "row extension matching failed on a valid rectangle");
    }
    std::vector<int> images(static_cast<size_t>(n));
    for (int col = 0; col < n; ++col) {
      images[static_cast<size_t>(col)] = symbol_of_col[static_cast<size_t>(col)] + 1;
      allowed[static_cast<size_t>(col)] &=
          ~(1u << symbol_of_col[static_cast<size_t>(col)]);
    }
    rows.push_back(Permutation::from_images(images));
  }

  std::vector<int> cells;
  cells.reserve(static_cast<size_t>(n) * n);
  for (const auto& row : rows)
    for (int k = 1; k <= n; ++k) cells.push_back(row(k));
  LatinSquare out(n, std::move(cells));
  if (!is_latin(out))
    throw VerificationFailure("completed rectangle is not Latin");
  return out;
}

void validate(const OrderedCliquePair& pair) {
  const int n = pair.n;
  if (static_cast<int>(pair.row_cliques.size()) != n ||
      static_cast<int>(pair.col_cliques.size()) != n)
    throw BrokenPair("clique lists must each have n = " + std::to_string(n) +
                     " members");
  for (const auto* list : {&pair.row_cliques, &pair.col_cliques}) {
    for (const auto& p : *list)
      if (p.degree() != n) throw BrokenPair("member degree differs from n");
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (n_fixed((*list)[static_cast<size_t>(i)],
                    (*list)[static_cast<size_t>(j)]) != 0)
          throw BrokenPair("list is not a clique: members " +
                           std::to_string(i + 1) + "," + std::to_string(j + 1) +
                           " agree somewhere");
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (n_fixed(pair.row_cliques[static_cast<size_t>(i)],
                  pair.col_cliques[static_cast<size_t>(j)]) != 1)
        throw BrokenPair("cross product sigma_" + std::to_string(i + 1) +
                         " omega_" + std::to_string(j + 1) +
                         "^-1 is not a near-derangement");
}

OrderedCliquePair gamma(const LatinSquare& a, const LatinSquare& b) {
  check_same_order(a.order(), b.order());
  if (!is_latin(a) || !is_latin(b))
    throw NotOrthogonal("gamma requires Latin inputs");
  if (!are_orthogonal(a, b))
    throw NotOrthogonal("gamma requires an orthogonal pair");
  const int n = a.order();
  OrderedCliquePair pair;
  pair.n = n;
  for (int j = 1; j <= n; ++j) {
    // sigma_j: A[j][k] -> B[j][k], omega_j: A[k][j] -> B[k][j].
    std::vector<int> row_images(static_cast<size_t>(n));
    std::vector<int> col_images(static_cast<size_t>(n));
    for (int k = 1; k <= n; ++k) {
      row_images[static_cast<size_t>(a.at(j, k) - 1)] = b.at(j, k);
      col_images[static_cast<size_t>(a.at(k, j) - 1)] = b.at(k, j);
    }
    pair.row_cliques.push_back(Permutation::from_images(row_images));
    pair.col_cliques.push_back(Permutation::from_images(col_images));
  }
  validate(pair);
  return pair;
}

std::pair<LatinSquare, LatinSquare> omega(const OrderedCliquePair& pair) {
  validate(pair);
  const int n = pair.n;
  std::vector<int> a_cells(static_cast<size_t>(n) * n);
  std::vector<int> b_cells(static_cast<size_t>(n) * n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const Permutation& sigma = pair.row_cliques[static_cast<size_t>(i - 1)];
      const Permutation& om = pair.col_cliques[static_cast<size_t>(j - 1)];
      int agreement = 0;
      for (int x = 1; x <= n; ++x)
        if (sigma(x) == om(x)) {
          agreement = x;
          break;
        }
      // validate() established exactly one agreement point.
      a_cells[static_cast<size_t>(i - 1) * n + (j - 1)] = agreement;
      b_cells[static_cast<size_t>(i - 1) * n + (j - 1)] = sigma(agreement);
    }
  LatinSquare a(n, std::move(a_cells));
  LatinSquare b(n, std::move(b_cells));
  if (!is_latin(a) || !is_latin(b) || !are_orthogonal(a, b))
    throw VerificationFailure("omega produced a non-orthogonal result");
  return {std::move(a), std::move(b)};
}

std::vector<LatinSquare> finite_field_squares(int n) {
  check_order(n);
  if (!is_prime(n)) throw Error("finite-field construction needs prime order");
  std::vector<LatinSquare> squares;
  for (int k = 1; k < n; ++k) {
    std::vector<int> cells(static_cast<size_t>(n) * n);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        cells[static_cast<size_t>(i - 1) * n + (j - 1)] =
            1 + ((i - 1) + k * (j - 1)) % n;
    squares.emplace_back(n, std::move(cells));
  }
  return squares;
}

namespace {

struct SquareDfs {
  int n;
  unsigned full;
  std::vector<unsigned> col_used;
  std::vector<int> cells;
  std::uint64_t count = 0;
  const std::function<void(const LatinSquare&)>* fn = nullptr;

  explicit SquareDfs(int n_)
      : n(n_), full((1u << n_) - 1), col_used(static_cast<size_t>(n_), 0) {
    cells.reserve(static_cast<size_t>(n) * n);
  }

  void run() { cell(0); }

  void cell(int idx) {
    if (idx == n * n) {
      ++count;
      if (fn) (*fn)(LatinSquare(n, cells));
      return;
    }
    const int col = idx % n;
    unsigned row_used = 0;
    for (int j = idx - col; j < idx; ++j)
      row_used |= 1u << (cells[static_cast<size_t>(j)] - 1);
    unsigned avail = full & ~col_used[static_cast<size_t>(col)] & ~row_used;
    while (avail) {
      const int s = std::countr_zero(avail);
      avail &= avail - 1;
      cells.push_back(s + 1);
      col_used[static_cast<size_t>(col)] |= 1u << s;
      cell(idx + 1);
      col_used[static_cast<size_t>(col)] ^= 1u << s;
      cells.pop_back();
    }
  }
};

}  // namespace

std::uint64_t count_latin_squares(int n) {
  check_order(n);
  if (n > 5)
    throw ResourceLimit("Latin square counting walks every square; n <= 5",
                        "--allow-long");
  SquareDfs dfs(n);
  dfs.run();
  return dfs.count;
}

void enumerate_latin_squares(int n,
                             const std::function<void(const LatinSquare&)>& fn) {
  check_order(n);
  if (n > 5)
    throw ResourceLimit("Latin square enumeration walks every square; n <= 5",
                        "--allow-long");
  SquareDfs dfs(n);
  dfs.fn = &fn;
  dfs.run();
}

std::string format_square(const LatinSquare& a) {
  std::string out;
  for (int i = 1; i <= a.order(); ++i) {
    for (int j = 1; j <= a.order(); ++j) {
      if (j > 1) out += ' ';
      out += std::to_string(a.at(i, j));
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::vector<int>> parse_grid_lines(std::string_view text,
                                               int first_line) {
  std::vector<std::vector<int>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = first_line - 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      if (rows.empty()) continue;  // leading blanks
      break;                       // blank after content terminates the grid
    }
    std::vector<int> row;
    std::istringstream cells(line);
    std::string tok;
    int col = 0;
    while (cells >> tok) {
      ++col;
      try {
        size_t pos = 0;
        const int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        row.push_back(v);
      } catch (const std::exception&) {
        throw ParseError("bad symbol '" + tok + "'", lineno, col);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

LatinSquare square_from_grid(const std::vector<std::vector<int>>& rows,
                             int first_line) {
  if (rows.empty()) throw ParseError("empty square", first_line, 1);
  const int n = static_cast<int>(rows[0].size());
  if (static_cast<int>(rows.size()) != n)
    throw ParseError("expected " + std::to_string(n) + " rows, found " +
                         std::to_string(rows.size()),
                     first_line + static_cast<int>(rows.size()), 1);
  for (size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<int>(rows[r].size()) != n)
      throw ParseError("expected " + std::to_string(n) + " symbols",
                       first_line + static_cast<int>(r), 1);
    for (size_t c = 0; c < rows[r].size(); ++c)
      if (rows[r][c] < 1 || rows[r][c] > n)
        throw ParseError("symbol " + std::to_string(rows[r][c]) +
                             " outside 1.." + std::to_string(n),
                         first_line + static_cast<int>(r),
                         static_cast<int>(c) + 1);
  }
  LatinSquare sq = LatinSquare::from_rows(rows);
  // Strict format: report which line breaks the Latin property.
  for (int i = 1; i <= n; ++i) {
    unsigned row_seen = 0;
    for (int k = 1; k <= n; ++k) {
      const unsigned bit = 1u << (sq.at(i, k) - 1);
      if (row_seen & bit)
        throw ParseError("repeated symbol " + std::to_string(sq.at(i, k)) +
                             " in row",
                         first_line + i - 1, k);
      row_seen |= bit;
    }
  }
  for (int j = 1; j <= n; ++j) {
    unsigned col_seen = 0;
    for (int k = 1; k <= n; ++k) {
      const unsigned bit = 1u << (sq.at(k, j) - 1);
      if (col_seen & bit)
        throw ParseError("repeated symbol " + std::to_string(sq.at(k, j)) +
                             " in column " + std::to_string(j),
                         first_line + k - 1, j);
      col_seen |= bit;
    }
  }
  return sq;
}

}  // namespace

LatinSquare parse_square(std::string_view text) {
  return square_from_grid(parse_grid_lines(text, 1), 1);
}

LatinRectangle parse_rectangle(std::string_view text) {
  const auto rows = parse_grid_lines(text, 1);
  if (rows.empty()) throw ParseError("empty rectangle", 1, 1);
  const int n = static_cast<int>(rows[0].size());
  try {
    return LatinRectangle::from_rows(n, rows);
  } catch (const InvalidRectangle& e) {
    throw ParseError(e.what(), 1, 1);
  }
}

std::string format_square_pair(const LatinSquare& a, const LatinSquare& b) {
  return format_square(a) + "\n" + format_square(b);
}

std::pair<LatinSquare, LatinSquare> parse_square_pair(std::string_view text) {
  // Split on the first blank line separating two non-empty blocks.
  std::istringstream in{std::string(text)};
  std::string line, first_block, second_block;
  int lineno = 0, first_start = 0, second_start = 0;
  bool in_second = false, seen_content = false;
  while (std::getline(in, line)) {
    ++lineno;
    const bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
    if (blank) {
      if (seen_content && !in_second) in_second = true;
      continue;
    }
    if (!in_second) {
      if (first_block.empty()) first_start = lineno;
      first_block += line + "\n";
      seen_content = true;
    } else {
      if (second_block.empty()) second_start = lineno;
      second_block += line + "\n";
    }
  }
  if (first_block.empty() || second_block.empty())
    throw ParseError("expected two squares separated by a blank line",
                     lineno ? lineno : 1, 1);
  LatinSquare a = square_from_grid(parse_grid_lines(first_block, first_start),
                                   first_start);
  LatinSquare b = square_from_grid(parse_grid_lines(second_block, second_start),
                                   second_start);
  return {std::move(a), std::move(b)};
}

std::string format_clique_pair(const OrderedCliquePair& pair) {
  return format_permutation_list(pair.row_cliques) + "\n" +
         format_permutation_list(pair.col_cliques) + "\n";
}

OrderedCliquePair parse_clique_pair(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::vector<Permutation>> lists;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      lists.push_back(parse_permutation_list(line));
    } catch (const InvalidPermutation& e) {
      throw ParseError(e.what(), lineno, 1);
    }
  }
  if (lists.size() != 2)
    throw ParseError("expected exactly two permutation-list lines",
                     lineno ? lineno : 1, 1);
  OrderedCliquePair pair;
  pair.n = static_cast<int>(lists[0].size());
  pair.row_cliques = std::move(lists[0]);
  pair.col_cliques = std::move(lists[1]);
  return pair;
}

}  // namespace derange
