#ifndef DERANGE_BITGRAPH_HPP
#define DERANGE_BITGRAPH_HPP

#include <cstdint>
#include <vector>

#include "derange/cache.hpp"
#include "derange/permutation.hpp"

namespace derange {

// Row-major bit matrix; rows are word-aligned for fast AND/XOR sweeps.
struct BitMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t words_per_row = 0;
  std::vector<std::uint64_t> bits;

  BitMatrix() = default;
  BitMatrix(std::size_t r, std::size_t c)
      : rows(r), cols(c), words_per_row((c + 63) / 64),
        bits(r * words_per_row, 0) {}

  const std::uint64_t* row(std::size_t r) const {
    return bits.data() + r * words_per_row;
  }
  std::uint64_t* row(std::size_t r) { return bits.data() + r * words_per_row; }
  bool test(std::size_t r, std::size_t c) const {
    return (row(r)[c >> 6] >> (c & 63)) & 1;
  }
  void set(std::size_t r, std::size_t c) { row(r)[c >> 6] |= 1ull << (c & 63); }
};

// The derangement graph X_n on the lexicographic enumeration of S_n:
// vertices are permutation ranks, adjacency sigma ~ tau iff n(sigma;tau) = 0.
// The adjacency bits for n = 6 are cached to disk.
struct DerangementGraph {
  int n = 0;
  std::vector<Permutation> perms;  // lex order; index = rank
  BitMatrix adj;

  // Process-wide memo; safe to share across threads once built.
  static const DerangementGraph& get(int n, const CacheOptions& cache = {});
};

}  // namespace derange

#endif
