#ifndef DERANGE_SPECTRAL_HPP
#define DERANGE_SPECTRAL_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "derange/cache.hpp"
#include "derange/clique.hpp"
#include "derange/errors.hpp"
#include "derange/exactla.hpp"
#include "derange/permutation.hpp"

namespace derange {

// The n! x n! matrix M[sigma][tau] = n(sigma;tau) over the canonical
// (lexicographic) enumeration of S_n.  Row sigma is the projection of the
// indicator 1_sigma evaluated across the group, so every dimension statement
// below is a rank of (a submatrix of) this object.
struct FixedPointMatrix {
  int n = 0;
  std::size_t size = 0;                // n!
  std::vector<std::uint8_t> entries;   // row-major, values in 0..n

  std::uint8_t at(std::size_t r, std::size_t c) const {
    return entries[r * size + c];
  }
};

// Computed once per degree and kept in memory; also cached to disk.
const FixedPointMatrix& fixed_point_matrix(int n, const CacheOptions& cache = {});

struct Field {
  enum class Kind { rationals, prime };
  Kind kind = Kind::rationals;
  std::int64_t p = 0;

  static Field rationals() { return {Kind::rationals, 0}; }
  static Field gf(std::int64_t p) { return {Kind::prime, p}; }
  std::string str() const;
};

// Rank of the fixed-point matrix over the field.  Equals (n-1)^2 + 1 over
// the rationals and (n-1)^2 - 2n + 4 over GF(p) when p divides n.
std::size_t projection_image_dim(int n, const Field& field,
                                 const CacheOptions& cache = {});

// Predicted rank when the theorems apply; -1 when no prediction is asserted
// (finite characteristic not dividing n is reported observationally).
std::int64_t predicted_projection_dim(int n, const Field& field);

// Rank over GF(p), p | n, of the rows indexed by the family's members.
// The modular obstruction bounds it by (n^2 - 4n + r + 5) / 2.
std::size_t family_span_dim(const DisconnectedFamily& family, std::int64_t p,
                            const CacheOptions& cache = {});

std::int64_t family_span_bound(int n, int r);

// GF(p) left-nullspace of the member rows, split into the span of the
// per-clique indicator dependencies and a complement of non-clique
// dependencies.  Every vector is re-verified against all tau in S_n.
struct DependencyBasis {
  int n = 0;
  std::int64_t p = 0;
  std::vector<Permutation> member_order;  // concatenated clique members
  std::vector<std::vector<std::uint8_t>> clique_vectors;
  std::vector<std::vector<std::uint8_t>> non_clique_vectors;
};

DependencyBasis dependency_basis(const DisconnectedFamily& family,
                                 std::int64_t p,
                                 const CacheOptions& cache = {});

// Exact class function on S_n given by cycle type.
struct ClassFunction {
  int n = 0;
  std::string label;
  std::map<CycleType, std::int64_t> values;

  std::int64_t at(const CycleType& type) const;
};

ClassFunction trivial_character(int n);
ClassFunction sign_character(int n);
ClassFunction natural_character(int n);   // fixed-point count
ClassFunction standard_character(int n);  // fixed-point count minus one

// lambda = |Delta_n| - (1/d) sum over derangements of chi; exact rational.
struct EigenvalueRecord {
  std::string label;
  std::int64_t dimension = 0;
  std::int64_t lambda_num = 0;
  std::int64_t lambda_den = 1;
};

EigenvalueRecord laplacian_eigenvalue(const ClassFunction& chi, std::int64_t d,
                                      int n);

// Largest real Laplacian eigenvalue D_n (1 + 1/(n-1)) as an exact integer.
std::int64_t lambda_std(int n);

// Checks, entrywise in exact integer arithmetic, that every matrix entry of
// the natural representation minus its mean is a Laplacian eigenfunction
// with eigenvalue lambda_std.  Means are scaled by n! instead of divided.
bool verify_eigenfunction(int n);

// dim U, dim U|_C and dim U|_C~ over GF(5) for a disconnected pair at n = 5,
// where U = span{n(.;tau) restricted to C union C~}.
struct USpaceDims {
  std::size_t dim_u = 0;
  std::size_t dim_c = 0;
  std::size_t dim_ct = 0;
};

USpaceDims u_space_dims(const DisconnectedFamily& pair,
                        const CacheOptions& cache = {});

}  // namespace derange

#endif
