// Acceptance suite: one line per criterion, nonzero exit if any fail.
//
// Criteria 3 and 8 assert the stated characteristic-2 rank values and the
// empty R-set search.  Both are known to be unattainable (see the FAIL
// detail lines, which carry the computed evidence); they are kept as stated
// rather than weakened, so this binary reports them red.

#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "derange/clique.hpp"
#include "derange/latin.hpp"
#include "derange/obstruction.hpp"
#include "derange/permutation.hpp"
#include "derange/spectral.hpp"
#include "support/oracles.hpp"

using namespace derange;

namespace {

int failures = 0;

void report(const std::string& criterion, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("CRITERION %-12s %s  %s\n", criterion.c_str(),
              pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

std::vector<DisconnectedFamily> tested_pairs(int n, std::uint64_t seed,
                                             size_t minimum) {
  auto pairs = find_disconnected_families(n, 2, SearchScope::exhaustive);
  const auto perms = all_permutations(n);
  std::mt19937_64 rng(seed);
  const size_t base = pairs.size();
  while (pairs.size() < minimum || pairs.size() < 2 * base) {
    const auto& f = pairs[rng() % base];
    const auto& tau = perms[rng() % perms.size()];
    pairs.push_back(DisconnectedFamily::of(
        {translate(f.cliques[0], tau), translate(f.cliques[1], tau)}));
  }
  return pairs;
}

// --- 1: the Gamma/Omega bijection, exhaustively at orders 3 and 4 ---------

void criterion_1() {
  bool ok = true;
  std::string detail;
  for (int n : {3, 4}) {
    const auto squares = oracles::all_latin_squares(n);
    std::uint64_t square_pairs = 0;
    for (const auto& a : squares)
      for (const auto& b : squares) {
        if (!are_orthogonal(a, b)) continue;
        ++square_pairs;
        const auto pair = gamma(a, b);
        const auto [a2, b2] = omega(pair);
        if (!(a2 == a) || !(b2 == b)) ok = false;
      }

    // every disconnected ordered clique pair round-trips the other way
    const auto cliques = maximal_cliques(n);
    std::uint64_t clique_pairs = 0;
    for (const auto& c1 : cliques)
      for (const auto& c2 : cliques) {
        if (c1 == c2 || !are_disconnected(c1, c2)) continue;
        std::vector<size_t> perm1(c1.members.size()), perm2(c2.members.size());
        for (size_t i = 0; i < perm1.size(); ++i) perm1[i] = i;
        do {
          for (size_t i = 0; i < perm2.size(); ++i) perm2[i] = i;
          do {
            OrderedCliquePair pair;
            pair.n = n;
            for (const auto i : perm1) pair.row_cliques.push_back(c1.members[i]);
            for (const auto i : perm2) pair.col_cliques.push_back(c2.members[i]);
            ++clique_pairs;
            const auto [a, b] = omega(pair);
            const auto pair2 = gamma(a, b);
            if (pair2.row_cliques != pair.row_cliques ||
                pair2.col_cliques != pair.col_cliques)
              ok = false;
          } while (std::next_permutation(perm2.begin(), perm2.end()));
        } while (std::next_permutation(perm1.begin(), perm1.end()));
      }

    if (square_pairs != clique_pairs || square_pairs == 0) ok = false;
    detail += "n=" + std::to_string(n) + ": " + std::to_string(square_pairs) +
              " ordered pairs each way; ";
  }
  report("1-bijection", ok, detail + "zero round-trip failures expected");
}

// --- 2: clique size law and counts against the independent oracle ---------

void criterion_2() {
  bool ok = true;
  std::string detail;
  const std::uint64_t expected_cliques[3] = {2, 24, 1344};
  for (int n : {3, 4, 5}) {
    std::uint64_t count = 0;
    bool sizes_ok = true;
    enumerate_maximal_cliques(n, {}, [&](const MaximalClique& c) {
      ++count;
      if (static_cast<int>(c.members.size()) != n) sizes_ok = false;
    });
    const std::uint64_t squares = oracles::count_latin_squares(n);
    const bool match = count == expected_cliques[n - 3] &&
                       count * factorial(n) == squares && sizes_ok;
    if (!match) ok = false;
    detail += "n=" + std::to_string(n) + ": " + std::to_string(count) +
              " cliques, " + std::to_string(squares) + " squares; ";
  }
  report("2-clique-law", ok, detail);
}

// --- 3: rank theorems (exact equality, as stated) --------------------------

void criterion_3() {
  bool ok = true;
  std::string detail;
  const std::int64_t rational_expected[4] = {5, 10, 17, 26};
  for (int n = 3; n <= 6; ++n) {
    const auto rank = projection_image_dim(n, Field::rationals());
    if (static_cast<std::int64_t>(rank) != rational_expected[n - 3]) ok = false;
    detail += "Q(" + std::to_string(n) + ")=" + std::to_string(rank) + " ";
  }
  const struct {
    int n;
    std::int64_t p;
    std::int64_t stated;
  } modular[] = {{3, 3, 2}, {4, 2, 5}, {5, 5, 10}, {6, 2, 17}, {6, 3, 17}};
  for (const auto& entry : modular) {
    const auto rank = projection_image_dim(entry.n, Field::gf(entry.p));
    const bool match = static_cast<std::int64_t>(rank) == entry.stated;
    if (!match) ok = false;
    detail += "gf" + std::to_string(entry.p) + "(" + std::to_string(entry.n) +
              ")=" + std::to_string(rank) +
              (match ? "" : "!=" + std::to_string(entry.stated)) + " ";
  }
  report("3-ranks", ok,
         detail + (ok ? ""
                      : "| char-2 entries compute to (n-2)^2: the stated "
                        "values overcount by one; see notes"));
}

// --- 4: modular obstruction bounds on found pairs ---------------------------

void criterion_4() {
  bool ok = true;
  std::string detail;
  const struct {
    int n;
    std::int64_t p;
    std::int64_t dim_bound;
    std::int64_t dep_lower;
    size_t minimum;
  } rows[] = {{3, 3, 2, 2, 1}, {4, 2, 3, 3, 2}, {5, 5, 6, 2, 20}};
  for (const auto& row : rows) {
    const auto pairs = tested_pairs(row.n, 20240601, row.minimum);
    if (pairs.size() < row.minimum) ok = false;
    for (const auto& f : pairs) {
      const auto dim = family_span_dim(f, row.p);
      const auto basis = dependency_basis(f, row.p);
      if (static_cast<std::int64_t>(dim) > row.dim_bound) ok = false;
      if (static_cast<std::int64_t>(basis.non_clique_vectors.size()) <
          row.dep_lower)
        ok = false;
    }
    detail += "n=" + std::to_string(row.n) + ": " +
              std::to_string(pairs.size()) + " pairs ok; ";
  }
  report("4-obstruction", ok, detail);
}

// --- 5: eigenvalue formula and eigenfunction verification -------------------

void criterion_5() {
  bool ok = true;
  const std::int64_t lambda_expected[3] = {3, 12, 55};
  const std::uint64_t derangements_expected[3] = {2, 9, 44};
  std::string detail;
  for (int n : {3, 4, 5}) {
    std::uint64_t brute = 0;
    for_each_permutation(n, [&](const Permutation& p) {
      brute += p.is_derangement();
    });
    const auto rec = laplacian_eigenvalue(standard_character(n), n - 1, n);
    const auto trivial = laplacian_eigenvalue(trivial_character(n), 1, n);
    const bool match = brute == derangements_expected[n - 3] &&
                       rec.lambda_den == 1 &&
                       rec.lambda_num == lambda_expected[n - 3] &&
                       rec.lambda_num == lambda_std(n) &&
                       trivial.lambda_num == 0 && verify_eigenfunction(n);
    if (!match) ok = false;
    detail += "n=" + std::to_string(n) + ": D=" + std::to_string(brute) +
              " lambda_std=" + std::to_string(rec.lambda_num) + "; ";
  }
  report("5-eigenvalues", ok, detail);
}

// --- 6: X_4 structure --------------------------------------------------------

void criterion_6() {
  const auto pairs = find_disconnected_families(4, 2, SearchScope::exhaustive);
  const MaximalClique klein = MaximalClique::of(
      {Permutation::identity(4), Permutation::from_cycles(4, {{1, 2}, {3, 4}}),
       Permutation::from_cycles(4, {{1, 3}, {2, 4}}),
       Permutation::from_cycles(4, {{1, 4}, {2, 3}})});
  std::set<MaximalClique> bases;
  bool translates = true;
  for (const auto& f : pairs) {
    bases.insert(f.cliques[0]);
    bool found = false;
    for_each_permutation(4, [&](const Permutation& tau) {
      if (translate(klein, tau) == f.cliques[1]) found = true;
    });
    if (!found) translates = false;
  }
  const auto triples = find_disconnected_families(4, 3, SearchScope::exhaustive);
  const auto quads = find_disconnected_families(4, 4, SearchScope::first_found);
  const bool ok = bases.size() == 1 && *bases.begin() == klein && translates &&
                  !triples.empty() && quads.empty();
  report("6-x4", ok,
         std::to_string(pairs.size()) + " pairs from one identity clique; r=3 "
         "family count " + std::to_string(triples.size()) + "; r=4 empty");
}

// --- 7: X_5 structure --------------------------------------------------------

void criterion_7() {
  const auto rep = x5_structure_report();
  bool ok = rep.participating > 0 && rep.all_cyclic &&
            rep.participating == rep.participating_cyclic &&
            rep.odd_derangement_members == 0;

  const auto pairs = tested_pairs(5, 20240602, 20);
  if (pairs.size() < 20) ok = false;
  for (const auto& f : pairs) {
    const auto dims = u_space_dims(f);
    if (dims.dim_u > 6 || dims.dim_c != 3 || dims.dim_ct != 3) ok = false;
  }

  bool ff_ok = true;
  try {
    const auto family = family_from_squares(finite_field_squares(5));
    ff_ok = family.cliques.size() == 4;
  } catch (const Error&) {
    ff_ok = false;
  }
  if (!ff_ok) ok = false;
  report("7-x5", ok,
         std::to_string(rep.participating) + "/" +
             std::to_string(rep.identity_cliques) +
             " identity cliques participate, all cyclic, no odd derangements; " +
             std::to_string(pairs.size()) + " pairs with U-dims (<=6,3,3); "
             "finite-field family of 4 verified");
}

// --- 8: Euler 36 -------------------------------------------------------------

void criterion_8() {
  RSetSearchOptions ro;
  ro.checkpoint = false;
  const auto cert = rset_search(6, ro);
  const bool a_empty = cert.survivors.empty();
  std::string bucket_detail;
  for (const auto& b : cert.buckets)
    bucket_detail += "[" + b.delta_type.str() + "]:" +
                     std::to_string(b.tally.survivors) + " ";
  report("8a-obstruction", a_empty,
         "R-set search verdict " + cert.verdict() + "; survivors per bucket " +
             bucket_detail +
             (a_empty ? ""
                      : "| all survivors are 3,3-cycle candidates satisfying "
                        "every stated property (see notes); the clique-level "
                        "route below is the decisive one"));

  FamilySearchOptions fo;
  fo.allow_long = true;
  fo.checkpoint = false;
  const auto result = exhaustive_pair_search(6, fo);
  const bool b_empty = result.families.empty() && result.tally.partners == 0;
  report("8b-exhaustive", b_empty && result.tally.base_cliques == 9408,
         std::to_string(result.tally.base_cliques) +
             " identity cliques scanned, " +
             std::to_string(result.tally.partners) +
             " disconnected partners found");

  report("8-agreement", a_empty == b_empty,
         std::string("obstruction ") + (a_empty ? "NONE" : "SURVIVORS") +
             " vs exhaustive " + (b_empty ? "NONE" : "EXISTS"));
}

// --- 9: property suites ------------------------------------------------------

void criterion_9() {
  bool ok = true;
  std::string detail;

  // near-derangement law on all found pairs
  std::uint64_t cross_checked = 0;
  for (int n : {3, 4, 5}) {
    for (const auto& f :
         find_disconnected_families(n, 2, SearchScope::exhaustive))
      for (const auto& sigma : f.cliques[0].members)
        for (const auto& omega_m : f.cliques[1].members) {
          ++cross_checked;
          if (n_fixed(sigma, omega_m) != 1) ok = false;
        }
  }
  detail += std::to_string(cross_checked) + " cross products near-derangement; ";

  // clique-dependency constancy, exhaustively for n <= 4
  for (int n : {2, 3, 4}) {
    const auto& m = fixed_point_matrix(n);
    enumerate_maximal_cliques(n, {}, [&](const MaximalClique& c) {
      std::vector<std::size_t> ranks;
      for (const auto& member : c.members) ranks.push_back(lex_rank(member));
      for (std::size_t tau = 0; tau < m.size; ++tau) {
        unsigned sum = 0;
        for (const auto r : ranks) sum += m.at(r, tau);
        if (sum != static_cast<unsigned>(n)) ok = false;
      }
    });
  }
  detail += "clique sums constant for n<=4; ";

  // translation invariance of disconnection, 100 seeded triples
  const auto cliques = maximal_cliques(4);
  const auto perms = all_permutations(4);
  std::mt19937_64 rng(12345);
  for (int k = 0; k < 100; ++k) {
    const auto& c1 = cliques[rng() % cliques.size()];
    const auto& c2 = cliques[rng() % cliques.size()];
    const auto& tau = perms[rng() % perms.size()];
    if (are_disconnected(c1, c2) !=
        are_disconnected(translate(c1, tau), translate(c2, tau)))
      ok = false;
  }
  detail += "100 seeded translation triples";
  report("9-properties", ok, detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (failures) {
    std::printf("%d criterion line(s) failed\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
