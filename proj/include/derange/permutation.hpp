#ifndef DERANGE_PERMUTATION_HPP
#define DERANGE_PERMUTATION_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "derange/errors.hpp"

namespace derange {

// Degrees are capped so a permutation packs into a small fixed-size value.
inline constexpr int kMaxDegree = 12;

// Element of S_n acting on {1,...,n}.  Immutable after construction.
// External representation is 1-based one-line notation ("2 3 1"); the
// 0-based internal layout is private.
class Permutation {
 public:
  Permutation() : n_(1) {}

  static Permutation identity(int n);
  // images[i] = sigma(i+1), values 1-based.  Rejects non-bijections.
  static Permutation from_images(std::span<const int> images);
  static Permutation from_images(std::initializer_list<int> images) {
    return from_images(std::span<const int>(images.begin(), images.size()));
  }
  // Disjoint-cycle convenience constructor; unlisted points are fixed.
  static Permutation from_cycles(
      int n, std::initializer_list<std::initializer_list<int>> cycles);
  // Parses one-line notation, e.g. "2 3 1".
  static Permutation parse(std::string_view text);

  int degree() const { return n_; }
  // Image of x under the permutation; x is 1-based.
  int operator()(int x) const { return img_[x - 1] + 1; }

  Permutation inverse() const;
  int fixed_point_count() const;
  bool is_derangement() const { return fixed_point_count() == 0; }
  bool is_near_derangement() const { return fixed_point_count() == 1; }
  // The unique fixed point of a near-derangement (1-based).
  int sole_fixed_point() const;
  bool is_even() const;
  bool is_identity() const;

  std::string str() const;

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.n_ == b.n_ && a.img_ == b.img_;
  }
  // Lexicographic on one-line notation; lower degree sorts first.
  friend std::strong_ordering operator<=>(const Permutation& a,
                                          const Permutation& b) {
    if (a.n_ != b.n_) return a.n_ <=> b.n_;
    for (int i = 0; i < a.n_; ++i)
      if (a.img_[i] != b.img_[i]) return a.img_[i] <=> b.img_[i];
    return std::strong_ordering::equal;
  }

 private:
  std::uint8_t n_;
  std::array<std::uint8_t, kMaxDegree> img_{};  // img_[i] = sigma(i), 0-based
};

// (sigma * tau)(x) = sigma(tau(x)); right-to-left function application.
Permutation compose(const Permutation& sigma, const Permutation& tau);

// n(sigma;tau): number of fixed points of sigma*tau^-1, equivalently the
// number of points where sigma and tau agree.
int n_fixed(const Permutation& sigma, const Permutation& tau);

// Non-increasing partition of n; fixed points contribute parts of size 1.
struct CycleType {
  std::vector<int> parts;

  std::string str() const;  // "2,2,2"
  friend bool operator==(const CycleType&, const CycleType&) = default;
  friend std::strong_ordering operator<=>(const CycleType&,
                                          const CycleType&) = default;
};

CycleType cycle_type(const Permutation& sigma);

// Streams all n! permutations in lexicographic order on one-line notation.
// Every downstream canonical form references this order.
void for_each_permutation(int n,
                          const std::function<void(const Permutation&)>& fn);

// Materializes the stream; guarded to n <= 8 to bound memory.
std::vector<Permutation> all_permutations(int n);

std::uint64_t factorial(int n);

// D_n, the number of fixed-point-free permutations of S_n.
std::uint64_t count_derangements(int n);

// Position of sigma in the lexicographic enumeration of its degree.
std::uint64_t lex_rank(const Permutation& sigma);
Permutation lex_unrank(int n, std::uint64_t rank);

// Shared "a|b|c" list-of-permutations line format.
std::string format_permutation_list(std::span<const Permutation> perms);
std::vector<Permutation> parse_permutation_list(std::string_view line);

std::ostream& operator<<(std::ostream& os, const Permutation& sigma);

}  // namespace derange

#endif
