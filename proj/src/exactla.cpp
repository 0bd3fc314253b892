#include "derange/exactla.hpp"

#include <algorithm>
#include <cassert>

namespace derange {

namespace {

void check_prime(std::int64_t p) {
  if (!is_prime(p))
    throw CompositeModulus("modulus " + std::to_string(p) + " is not prime");
}

std::uint8_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t acc = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) acc = acc * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return static_cast<std::uint8_t>(acc);
}

std::uint8_t inv_mod(std::uint8_t a, std::int64_t p) {
  return mod_pow(a, static_cast<std::uint64_t>(p - 2),
                 static_cast<std::uint64_t>(p));
}

// Packs rows of a GF(2) matrix into 64-bit words.
struct PackedRows {
  std::size_t cols = 0;
  std::size_t words = 0;
  std::vector<std::uint64_t> bits;

  explicit PackedRows(const PrimeFieldMatrix& m)
      : cols(m.cols), words((m.cols + 63) / 64), bits(m.rows * words, 0) {
    for (std::size_t r = 0; r < m.rows; ++r)
      for (std::size_t c = 0; c < m.cols; ++c)
        if (m.at(r, c)) row(r)[c >> 6] |= 1ull << (c & 63);
  }

  std::uint64_t* row(std::size_t r) { return bits.data() + r * words; }
  bool test(std::size_t r, std::size_t c) const {
    return (bits[r * words + (c >> 6)] >> (c & 63)) & 1;
  }
  void xor_rows(std::size_t dst, std::size_t src) {
    std::uint64_t* d = row(dst);
    const std::uint64_t* s = bits.data() + src * words;
    for (std::size_t w = 0; w < words; ++w) d[w] ^= s[w];
  }
};

// Reduce to row echelon form in place; returns pivot columns.
std::vector<std::size_t> echelon_gf2(PackedRows& m, std::size_t rows) {
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && !m.test(pivot, c)) ++pivot;
    if (pivot == rows) continue;
    std::swap_ranges(m.row(rank), m.row(rank) + m.words, m.row(pivot));
    for (std::size_t r = 0; r < rows; ++r)
      if (r != rank && m.test(r, c)) m.xor_rows(r, rank);
    pivots.push_back(c);
    ++rank;
  }
  return pivots;
}

std::vector<std::size_t> echelon_gfp(PrimeFieldMatrix& m) {
  const auto p = static_cast<std::uint32_t>(m.p);
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols && rank < m.rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < m.rows && m.at(pivot, c) == 0) ++pivot;
    if (pivot == m.rows) continue;
    if (pivot != rank)
      for (std::size_t j = 0; j < m.cols; ++j) {
        const auto tmp = m.at(rank, j);
        m.set(rank, j, m.at(pivot, j));
        m.set(pivot, j, tmp);
      }
    const std::uint32_t inv = inv_mod(m.at(rank, c), m.p);
    for (std::size_t j = c; j < m.cols; ++j)
      m.set(rank, j,
            static_cast<std::uint8_t>(m.at(rank, j) * inv % p));
    for (std::size_t r = 0; r < m.rows; ++r) {
      if (r == rank) continue;
      const std::uint32_t f = m.at(r, c);
      if (!f) continue;
      for (std::size_t j = c; j < m.cols; ++j) {
        const std::uint32_t v =
            m.at(r, j) + p * p - f * m.at(rank, j);
        m.set(r, j, static_cast<std::uint8_t>(v % p));
      }
    }
    pivots.push_back(c);
    ++rank;
  }
  return pivots;
}

}  // namespace

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

PrimeFieldMatrix PrimeFieldMatrix::zero(std::int64_t p, std::size_t rows,
                                        std::size_t cols) {
  if (rows == 0 || cols == 0) throw Error("matrix dimensions must be positive");
  if (p < 2 || p > 255) throw Error("modulus must lie in 2..255");
  PrimeFieldMatrix m;
  m.p = p;
  m.rows = rows;
  m.cols = cols;
  m.entries.assign(rows * cols, 0);
  return m;
}

PrimeFieldMatrix PrimeFieldMatrix::from_ints(std::int64_t p, std::size_t rows,
                                             std::size_t cols,
                                             std::span<const int> values) {
  PrimeFieldMatrix m = zero(p, rows, cols);
  if (values.size() != rows * cols)
    throw Error("from_ints: value count does not match dimensions");
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto v = static_cast<std::int64_t>(values[i]) % p;
    m.entries[i] = static_cast<std::uint8_t>(v < 0 ? v + p : v);
  }
  return m;
}

std::size_t rank_gf(const PrimeFieldMatrix& m) {
  check_prime(m.p);
  if (m.p == 2) {
    PackedRows packed(m);
    return echelon_gf2(packed, m.rows).size();
  }
  PrimeFieldMatrix work = m;
  return echelon_gfp(work).size();
}

std::vector<std::vector<std::uint8_t>> nullspace_gf(const PrimeFieldMatrix& m) {
  check_prime(m.p);
  const auto p = static_cast<std::uint32_t>(m.p);

  std::vector<std::size_t> pivots;
  // Kernel basis from reduced row echelon form: one vector per free column.
  std::vector<std::vector<std::uint8_t>> basis;
  auto is_pivot = [&](std::size_t c, std::size_t& which) {
    const auto it = std::lower_bound(pivots.begin(), pivots.end(), c);
    if (it == pivots.end() || *it != c) return false;
    which = static_cast<std::size_t>(it - pivots.begin());
    return true;
  };

  if (m.p == 2) {
    PackedRows packed(m);
    pivots = echelon_gf2(packed, m.rows);
    for (std::size_t c = 0; c < m.cols; ++c) {
      std::size_t which;
      if (is_pivot(c, which)) continue;
      std::vector<std::uint8_t> v(m.cols, 0);
      v[c] = 1;
      for (std::size_t i = 0; i < pivots.size(); ++i)
        v[pivots[i]] = packed.test(i, c) ? 1 : 0;
      basis.push_back(std::move(v));
    }
  } else {
    PrimeFieldMatrix work = m;
    pivots = echelon_gfp(work);
    for (std::size_t c = 0; c < m.cols; ++c) {
      std::size_t which;
      if (is_pivot(c, which)) continue;
      std::vector<std::uint8_t> v(m.cols, 0);
      v[c] = 1;
      for (std::size_t i = 0; i < pivots.size(); ++i) {
        const std::uint32_t coeff = work.at(i, c);
        v[pivots[i]] = static_cast<std::uint8_t>(coeff ? p - coeff : 0);
      }
      basis.push_back(std::move(v));
    }
  }

  if (pivots.size() + basis.size() != m.cols)
    throw VerificationFailure("rank + nullity != cols");
  for (const auto& v : basis)
    for (std::size_t r = 0; r < m.rows; ++r) {
      std::uint64_t acc = 0;
      for (std::size_t c = 0; c < m.cols; ++c)
        acc += static_cast<std::uint64_t>(m.at(r, c)) * v[c];
      if (acc % p != 0)
        throw VerificationFailure("nullspace vector fails m*v = 0");
    }
  return basis;
}

RationalMatrix RationalMatrix::zero(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw Error("matrix dimensions must be positive");
  RationalMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.entries.assign(rows * cols, mpz_class(0));
  return m;
}

RationalMatrix RationalMatrix::from_ints(std::size_t rows, std::size_t cols,
                                         std::span<const int> values) {
  RationalMatrix m = zero(rows, cols);
  if (values.size() != rows * cols)
    throw Error("from_ints: value count does not match dimensions");
  for (std::size_t i = 0; i < values.size(); ++i) m.entries[i] = values[i];
  return m;
}

std::size_t rank_rational(const RationalMatrix& input) {
  RationalMatrix m = input;
  std::size_t rank = 0;
  mpz_class prev(1);
  for (std::size_t c = 0; c < m.cols && rank < m.rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < m.rows && m.at(pivot, c) == 0) ++pivot;
    if (pivot == m.rows) continue;
    if (pivot != rank)
      for (std::size_t j = 0; j < m.cols; ++j)
        std::swap(m.entries[rank * m.cols + j], m.entries[pivot * m.cols + j]);

    // One-step Bareiss update: entries stay (rank+1)-minors of the input,
    // so the division by the previous pivot is exact.
    const mpz_class piv = m.at(rank, c);
    for (std::size_t r = rank + 1; r < m.rows; ++r) {
      const mpz_class lead = m.at(r, c);
      for (std::size_t j = c + 1; j < m.cols; ++j) {
        mpz_class num = piv * m.at(r, j) - lead * m.at(rank, j);
        mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
        m.set(r, j, std::move(num));
      }
      m.set(r, c, mpz_class(0));
    }
    prev = piv;
    ++rank;
  }
  return rank;
}

std::string dump(const PrimeFieldMatrix& m) {
  std::string out = std::to_string(m.p) + " " + std::to_string(m.rows) + " " +
                    std::to_string(m.cols) + "\n";
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) {
      if (c) out += ' ';
      out += std::to_string(m.at(r, c));
    }
    out += '\n';
  }
  if (m.p == 2) {
    out += "# hex\n";
    for (std::size_t r = 0; r < m.rows; ++r) {
      const std::size_t nibbles = (m.cols + 3) / 4;
      std::string hex(nibbles, '0');
      for (std::size_t c = 0; c < m.cols; ++c) {
        if (!m.at(r, c)) continue;
        const std::size_t nib = c / 4;
        const int bit = 3 - static_cast<int>(c % 4);
        int v = hex[nib] <= '9' ? hex[nib] - '0' : hex[nib] - 'a' + 10;
        v |= 1 << bit;
        hex[nib] = static_cast<char>(v < 10 ? '0' + v : 'a' + v - 10);
      }
      out += hex;
      out += '\n';
    }
  }
  return out;
}

}  // namespace derange
