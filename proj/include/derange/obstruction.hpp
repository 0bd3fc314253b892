#ifndef DERANGE_OBSTRUCTION_HPP
#define DERANGE_OBSTRUCTION_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "derange/cache.hpp"
#include "derange/clique.hpp"
#include "derange/errors.hpp"
#include "derange/permutation.hpp"

namespace derange {

// The quadruple {e, delta, eta1, eta2} with its derived fixed-point data:
// a_j = fix(eta_j), c_j = fix(eta_j delta^-1), b_j = delta^-1(c_j).
struct RSet {
  int n = 0;
  Permutation delta, eta1, eta2;
  int a1 = 0, a2 = 0, b1 = 0, b2 = 0, c1 = 0, c2 = 0;

  friend bool operator==(const RSet& x, const RSet& y) {
    return x.n == y.n && x.delta == y.delta && x.eta1 == y.eta1 &&
           x.eta2 == y.eta2;
  }
  friend std::strong_ordering operator<=>(const RSet& x, const RSet& y) {
    if (auto c = x.delta <=> y.delta; c != 0) return c;
    if (auto c = x.eta1 <=> y.eta1; c != 0) return c;
    return x.eta2 <=> y.eta2;
  }
};

// Validates the structural bullets (delta a derangement, etas and
// eta_j delta^-1 near-derangements, eta1 eta2^-1 a derangement) and fills in
// the derived data.  Throws StructuralReject naming the violated bullet.
RSet derive_fixed_data(const Permutation& delta, const Permutation& eta1,
                       const Permutation& eta2);

// Classifies an unordered 4-set containing the identity into R-set roles
// (etas ordered lexicographically) and validates it.
RSet rset_from_set(std::vector<Permutation> members);

enum class ParityMode { sampled, full };

// Whether sum over R of n(sigma;tau) is even for all tau in S_n.  Sampled
// mode tests the transpositions first (the cheap discriminators) and then
// escalates to the full group, so both modes return the same verdict.
bool parity_check(const RSet& r, ParityMode mode = ParityMode::full,
                  const CacheOptions& cache = {});

// The five sets of Lemma "all six": on a candidate satisfying structure and
// parity, each must have six elements.  Specific to degree 6.
struct SixSets {
  std::array<std::vector<int>, 5> sets;  // D, E, F, G, H (sorted values)
  bool all_six() const;
  static constexpr const char* names[5] = {"D", "E", "F", "G", "H"};
};

SixSets six_sets(const RSet& r);

struct RSetStageTally {
  std::uint64_t pairs_considered = 0;
  std::uint64_t rejected_eta_product = 0;   // eta1 eta2^-1 not a derangement
  std::uint64_t entered = 0;                // structurally valid candidates
  std::uint64_t rejected_six_sets = 0;
  std::uint64_t rejected_placement = 0;     // optional lemma-based pruning
  std::uint64_t rejected_parity_prefilter = 0;
  std::uint64_t rejected_parity_full = 0;
  std::uint64_t survivors = 0;

  RSetStageTally& operator+=(const RSetStageTally& o);
};

struct RSetBucketReport {
  CycleType delta_type;
  std::uint64_t delta_count = 0;
  RSetStageTally tally;
};

// Machine-readable outcome of the R-set search: per-stage counts for every
// delta cycle-type bucket plus any surviving candidates.
struct RSetSearchCertificate {
  int n = 0;
  bool certified = true;  // plain translation-normalized enumeration only
  bool conjugation_reduced = false;
  bool placement_pruning = false;
  std::uint64_t derangements = 0;
  std::uint64_t near_derangements = 0;
  std::vector<RSetBucketReport> buckets;
  std::vector<RSet> survivors;

  RSetStageTally totals() const;
  // NONE: no candidate satisfies every property.  SURVIVORS: candidates
  // satisfying all of them exist, so this route alone decides nothing.
  std::string verdict() const {
    return survivors.empty() ? "NONE" : "SURVIVORS";
  }
};

struct RSetSearchOptions {
  unsigned threads = 1;
  bool conjugation_reduced = false;  // one delta per cycle type; not certified
  bool placement_pruning = false;    // Lemma-based placement filter
  bool checkpoint = true;
  CacheOptions cache;
};

// Enumerates delta over derangements (bucketed by cycle type), eta pairs
// over compatible near-derangements, then prunes: six-set cardinality,
// transposition parity pre-filter, full parity over all of S_n.  Empty
// survivor list at n = 6 is the obstruction-side nonexistence proof.
RSetSearchCertificate rset_search(int n, const RSetSearchOptions& opts = {});

// The per-cycle-type exclusion report at n = 6.
RSetSearchCertificate exclusion_suite(const RSetSearchOptions& opts = {});

// Reduces a GF(2) dependency of a disconnected pair at even n to a
// normalized R-set: symmetric-difference moves against the clique
// indicators force a 2+2 split, then translation puts e in R intersect C.
RSet extract_rset(const DisconnectedFamily& pair,
                  const CacheOptions& cache = {});
std::vector<RSet> extract_all_rsets(const DisconnectedFamily& pair,
                                    const CacheOptions& cache = {});

}  // namespace derange

#endif
