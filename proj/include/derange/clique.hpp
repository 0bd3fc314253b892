#ifndef DERANGE_CLIQUE_HPP
#define DERANGE_CLIQUE_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "derange/cache.hpp"
#include "derange/errors.hpp"
#include "derange/latin.hpp"
#include "derange/permutation.hpp"

namespace derange {

// A maximal clique in X_n: exactly n permutations, pairwise at derangement
// distance, stored in canonical (lexicographic) member order.
struct MaximalClique {
  int n = 0;
  std::vector<Permutation> members;

  // Sorts and validates the clique invariants.
  static MaximalClique of(std::vector<Permutation> members);

  bool contains(const Permutation& p) const;

  friend bool operator==(const MaximalClique&, const MaximalClique&) = default;
  friend std::strong_ordering operator<=>(const MaximalClique& a,
                                          const MaximalClique& b) {
    if (a.n != b.n) return a.n <=> b.n;
    return a.members <=> b.members;
  }
};

bool are_disconnected(const MaximalClique& c1, const MaximalClique& c2);

// Right translation: members become {sigma tau^-1}.  Clique and
// disconnection relations are preserved.
MaximalClique translate(const MaximalClique& c, const Permutation& tau);

// Pairwise disconnected maximal cliques, in canonical clique order.
struct DisconnectedFamily {
  int n = 0;
  std::vector<MaximalClique> cliques;

  static DisconnectedFamily of(std::vector<MaximalClique> cliques);

  friend bool operator==(const DisconnectedFamily&,
                         const DisconnectedFamily&) = default;
  friend std::strong_ordering operator<=>(const DisconnectedFamily& a,
                                          const DisconnectedFamily& b) {
    if (a.n != b.n) return a.n <=> b.n;
    return a.cliques <=> b.cliques;
  }
};

struct EnumerateOptions {
  bool allow_long = false;    // n = 6 full enumeration opt-in
  bool identity_only = false; // restrict to cliques containing the identity
  unsigned threads = 1;       // 0 = hardware
  CacheOptions cache;
};

// Depth-first extension in lexicographic member order, pruning with
// per-column available-symbol masks.  Emits each maximal clique exactly once
// in canonical order (independent of thread count) and returns the count.
std::uint64_t enumerate_maximal_cliques(
    int n, const EnumerateOptions& opts,
    const std::function<void(const MaximalClique&)>& sink);

std::vector<MaximalClique> maximal_cliques(int n,
                                           const EnumerateOptions& opts = {});

enum class SearchScope { exhaustive, first_found };

struct FamilySearchOptions {
  bool allow_long = false;
  unsigned threads = 1;
  CacheOptions cache;
  bool checkpoint = true;  // long n = 6 scans checkpoint to the cache dir
};

// Families normalized so the first clique contains the identity; cliques are
// listed in canonical order.  Exhaustive scope returns all such families.
std::vector<DisconnectedFamily> find_disconnected_families(
    int n, int r, SearchScope scope, const FamilySearchOptions& opts = {});

// Stage tallies for the r = 2 scan over identity-containing cliques; this is
// the independent clique-level route to the order-6 nonexistence result.
struct PairSearchTally {
  std::uint64_t base_cliques = 0;    // identity-containing cliques scanned
  std::uint64_t with_candidates = 0; // nonempty partner candidate set
  std::uint64_t candidate_ge_n = 0;  // candidate set large enough for a clique
  std::uint64_t max_candidates = 0;  // largest candidate set seen
  std::uint64_t partners = 0;        // disconnected partners found
};

struct PairSearchResult {
  PairSearchTally tally;
  std::vector<DisconnectedFamily> families;
};

PairSearchResult exhaustive_pair_search(int n, const FamilySearchOptions& opts = {});

// Structure survey of X_5: identity-containing cliques that participate in a
// disconnected pair are the cyclic groups of 5-cycles and contain no odd
// derangements.
struct X5StructureReport {
  std::uint64_t identity_cliques = 0;
  std::uint64_t participating = 0;
  std::uint64_t participating_cyclic = 0;
  std::uint64_t odd_derangement_members = 0;  // across participating cliques
  bool all_cyclic = false;
};

X5StructureReport x5_structure_report(const FamilySearchOptions& opts = {});

// Builds one clique per square from the symbol patterns: the member for
// symbol s maps row i to the column where s sits in row i.  Distinct squares
// give disconnected cliques exactly when the squares are orthogonal.
DisconnectedFamily family_from_squares(std::span<const LatinSquare> squares);

// Grows a clique from a random vertex by random compatible extensions until
// stuck.  The size law says the result always has n members; callers assert.
std::vector<Permutation> random_greedy_clique_members(
    int n, std::uint64_t seed, const CacheOptions& cache = {});

// --- text formats -------------------------------------------------------
// Clique file: one clique per line, members joined by '|'.
// Family file: "# family k" header followed by one line per clique.

std::string format_clique(const MaximalClique& c);
MaximalClique parse_clique(std::string_view line);
std::string format_family_file(std::span<const DisconnectedFamily> families);
std::vector<DisconnectedFamily> parse_family_file(std::string_view text);

}  // namespace derange

#endif
