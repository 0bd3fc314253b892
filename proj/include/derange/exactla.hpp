#ifndef DERANGE_EXACTLA_HPP
#define DERANGE_EXACTLA_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "derange/errors.hpp"

namespace derange {

bool is_prime(std::int64_t p);

// Dense matrix over GF(p), p prime and < 256.  Entries stored reduced.
struct PrimeFieldMatrix {
  std::int64_t p = 2;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> entries;  // row-major

  static PrimeFieldMatrix zero(std::int64_t p, std::size_t rows,
                               std::size_t cols);
  static PrimeFieldMatrix from_ints(std::int64_t p, std::size_t rows,
                                    std::size_t cols,
                                    std::span<const int> values);

  std::uint8_t at(std::size_t r, std::size_t c) const {
    return entries[r * cols + c];
  }
  void set(std::size_t r, std::size_t c, std::uint8_t v) {
    entries[r * cols + c] = v;
  }
};

// Row rank over GF(p).  GF(2) uses machine-word bit packing with XOR
// elimination; other primes use byte entries with Gaussian elimination.
std::size_t rank_gf(const PrimeFieldMatrix& m);

// Basis of {v : m v = 0}; exactly cols - rank vectors, each re-verified
// against the input before returning.
std::vector<std::vector<std::uint8_t>> nullspace_gf(const PrimeFieldMatrix& m);

// Exact integer matrix; rank is taken over the rationals.  No floating
// point exists anywhere on this path.
struct RationalMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<mpz_class> entries;  // row-major

  static RationalMatrix zero(std::size_t rows, std::size_t cols);
  static RationalMatrix from_ints(std::size_t rows, std::size_t cols,
                                  std::span<const int> values);

  const mpz_class& at(std::size_t r, std::size_t c) const {
    return entries[r * cols + c];
  }
  void set(std::size_t r, std::size_t c, mpz_class v) {
    entries[r * cols + c] = std::move(v);
  }
};

// Fraction-free (Bareiss) elimination; divisions are exact by construction.
std::size_t rank_rational(const RationalMatrix& m);

// Debug dump: header "p rows cols", then row-major entries; GF(2) matrices
// additionally dump each row as a hex bitstring (bit 0 of the row first in
// the most significant printed position).
std::string dump(const PrimeFieldMatrix& m);

}  // namespace derange

#endif
