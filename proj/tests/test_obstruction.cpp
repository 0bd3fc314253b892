#include <algorithm>
#include <filesystem>
#include <set>

#include "doctest.h"

#include "derange/obstruction.hpp"
#include "derange/spectral.hpp"

using namespace derange;

namespace {

// A structurally valid candidate at degree 6 for exercising the derived
// data: delta = (1 2 3)(4 5 6), eta1 = (2 4 5 3 6), eta2 = (1 4 2 3 5).
RSet sample_candidate() {
  return derive_fixed_data(
      Permutation::from_cycles(6, {{1, 2, 3}, {4, 5, 6}}),
      Permutation::from_cycles(6, {{2, 4, 5, 3, 6}}),
      Permutation::from_cycles(6, {{1, 4, 2, 3, 5}}));
}

}  // namespace

TEST_CASE("derive_fixed_data names the violated bullet") {
  const auto delta = Permutation::from_cycles(6, {{1, 2}, {3, 4}, {5, 6}});
  SUBCASE("eta built as delta * (5 6) fails the near-derangement bullets") {
    const auto eta1 = compose(delta, Permutation::from_cycles(6, {{5, 6}}));
    CHECK(eta1.fixed_point_count() == 2);
    const auto eta2 = Permutation::from_cycles(6, {{1, 2, 3, 4, 5}});
    CHECK_THROWS_AS(derive_fixed_data(delta, eta1, eta2), StructuralReject);
  }
  SUBCASE("equal etas fail the derangement bullet") {
    const auto eta = Permutation::from_cycles(6, {{1, 2, 3, 4, 5}});
    CHECK_THROWS_AS(derive_fixed_data(delta, eta, eta), StructuralReject);
  }
  SUBCASE("non-derangement delta is rejected") {
    CHECK_THROWS_AS(derive_fixed_data(Permutation::identity(6),
                                      Permutation::from_cycles(6, {{1, 2, 3, 4, 5}}),
                                      Permutation::from_cycles(6, {{2, 3, 4, 5, 6}})),
                    StructuralReject);
  }
}

TEST_CASE("derived fixed-point data satisfies delta(b_j) = c_j = eta_j(b_j)") {
  const auto r = sample_candidate();
  CHECK(r.a1 == r.eta1.sole_fixed_point());
  CHECK(r.a2 == r.eta2.sole_fixed_point());
  CHECK(r.delta(r.b1) == r.c1);
  CHECK(r.eta1(r.b1) == r.c1);
  CHECK(r.delta(r.b2) == r.c2);
  CHECK(r.eta2(r.b2) == r.c2);
}

TEST_CASE("rset_from_set classifies roles") {
  const auto r = sample_candidate();
  const auto again = rset_from_set(
      {Permutation::identity(6), r.eta2, r.delta, r.eta1});
  CHECK(again == r);
  CHECK_THROWS_AS(rset_from_set({r.delta, r.eta1, r.eta2,
                                 Permutation::from_cycles(6, {{1, 2}})}),
                  StructuralReject);
}

TEST_CASE("parity at the identity is structural") {
  // n(e;e) + n(delta;e) + n(eta1;e) + n(eta2;e) = 6 + 0 + 1 + 1 = 8
  const auto r = sample_candidate();
  const auto& m = fixed_point_matrix(6);
  unsigned sum = 0;
  for (const auto& p : {Permutation::identity(6), r.delta, r.eta1, r.eta2})
    sum += m.at(lex_rank(p), 0);
  CHECK(sum == 8);
}

TEST_CASE("six sets of the sample candidate are all full") {
  const auto r = sample_candidate();
  const auto sets = six_sets(r);
  for (const auto& s : sets.sets) CHECK(s.size() == 6);
  CHECK(sets.all_six());
  CHECK_THROWS_AS(six_sets(RSet{4, {}, {}, {}, 0, 0, 0, 0, 0, 0}), Error);
}

TEST_CASE("translated set R delta^-1 swaps the fixed-point data") {
  const auto r = sample_candidate();
  const auto di = r.delta.inverse();
  const auto translated = derive_fixed_data(di, compose(r.eta1, di),
                                            compose(r.eta2, di));
  CHECK(translated.a1 == r.c1);
  CHECK(translated.a2 == r.c2);
  CHECK(translated.c1 == r.a1);
  CHECK(translated.c2 == r.a2);
  CHECK(translated.b1 == r.delta(r.a1));
  CHECK(translated.b2 == r.delta(r.a2));
}

TEST_CASE("translation keeps R-set structure and the parity verdict") {
  const auto r = sample_candidate();
  const bool parity = parity_check(r, ParityMode::full);
  for (const auto& t : {r.delta, r.eta1, r.eta2}) {
    const auto ti = t.inverse();
    const auto moved = rset_from_set({compose(Permutation::identity(6), ti),
                                      compose(r.delta, ti),
                                      compose(r.eta1, ti),
                                      compose(r.eta2, ti)});
    CHECK(parity_check(moved, ParityMode::full) == parity);
    CHECK(parity_check(moved, ParityMode::sampled) == parity);
  }
}

TEST_CASE("the n=4 R-set search finds survivors with 2,2-cycle deltas only") {
  RSetSearchOptions opts;
  opts.checkpoint = false;
  const auto cert = rset_search(4, opts);
  CHECK(cert.n == 4);
  CHECK(cert.derangements == 9);
  CHECK(cert.near_derangements == 8);
  CHECK(cert.verdict() == "SURVIVORS");
  REQUIRE(!cert.survivors.empty());
  for (const auto& s : cert.survivors) {
    CHECK(cycle_type(s.delta).parts == std::vector<int>{2, 2});
    CHECK(parity_check(s, ParityMode::full));
  }
  // no 4-cycle delta survives
  for (const auto& b : cert.buckets)
    if (b.delta_type.parts == std::vector<int>{4})
      CHECK(b.tally.survivors == 0);
}

TEST_CASE("the n=6 search is deterministic across thread counts") {
  RSetSearchOptions one;
  one.threads = 1;
  one.checkpoint = false;
  one.conjugation_reduced = true;  // representative sweep keeps this test fast
  RSetSearchOptions two = one;
  two.threads = 2;
  const auto a = rset_search(6, one);
  const auto b = rset_search(6, two);
  REQUIRE(a.buckets.size() == b.buckets.size());
  for (size_t i = 0; i < a.buckets.size(); ++i) {
    CHECK(a.buckets[i].delta_type == b.buckets[i].delta_type);
    CHECK(a.buckets[i].tally.pairs_considered ==
          b.buckets[i].tally.pairs_considered);
    CHECK(a.buckets[i].tally.survivors == b.buckets[i].tally.survivors);
  }
  CHECK(a.survivors == b.survivors);
  CHECK_FALSE(a.certified);
}

TEST_CASE("conjugation-reduced n=6 sweep sees the 3,3 survivors") {
  RSetSearchOptions opts;
  opts.conjugation_reduced = true;
  opts.checkpoint = false;
  const auto cert = rset_search(6, opts);
  // one representative delta per cycle type
  std::uint64_t deltas = 0;
  for (const auto& b : cert.buckets) deltas += b.delta_count;
  CHECK(deltas == 4);
  for (const auto& b : cert.buckets) {
    if (b.delta_type.parts == std::vector<int>{3, 3})
      CHECK(b.tally.survivors == 9);
    else
      CHECK(b.tally.survivors == 0);
  }
  for (const auto& s : cert.survivors) {
    CHECK(six_sets(s).all_six());
    CHECK(parity_check(s, ParityMode::full));
  }
}

TEST_CASE("a corrupt checkpoint falls back to a clean full search") {
  CacheOptions cache;
  cache.dir = (std::filesystem::temp_directory_path() / "derange-ckpt-test")
                  .string();
  std::filesystem::remove_all(cache.dir);

  RSetSearchOptions opts;
  opts.cache = cache;
  opts.checkpoint = true;
  const auto clean = rset_search(6, opts);

  // plant garbage under the key the search uses
  Checkpoint bogus;
  bogus.done = 7;
  bogus.state = {std::byte{0xde}, std::byte{0xad}, std::byte{0xbe}};
  checkpoint_store(cache, "rsetsearch-n6-v1", bogus);
  const auto recovered = rset_search(6, opts);
  CHECK(recovered.survivors == clean.survivors);
  CHECK(recovered.totals().pairs_considered ==
        clean.totals().pairs_considered);
  // completing the search clears its checkpoint
  CHECK_FALSE(checkpoint_load(cache, "rsetsearch-n6-v1").has_value());

  FamilySearchOptions fo;
  fo.allow_long = true;
  fo.cache = cache;
  const auto base = exhaustive_pair_search(6, fo);
  checkpoint_store(cache, "pairsearch-n6-v1", bogus);
  const auto redo = exhaustive_pair_search(6, fo);
  CHECK(redo.tally.base_cliques == base.tally.base_cliques);
  CHECK(redo.tally.partners == base.tally.partners);
  std::filesystem::remove_all(cache.dir);
}

TEST_CASE("R-set extraction from the n=4 pairs") {
  const auto pairs = find_disconnected_families(4, 2, SearchScope::exhaustive);
  REQUIRE(!pairs.empty());
  for (const auto& f : pairs) {
    const auto rsets = extract_all_rsets(f);
    REQUIRE(!rsets.empty());
    std::set<Permutation> deltas;
    for (const auto& r : rsets) {
      CHECK(cycle_type(r.delta).parts == std::vector<int>{2, 2});
      CHECK(parity_check(r, ParityMode::full));
      deltas.insert(r.delta);
    }
    // the three independent parity subsets cannot all share one {e, delta}
    CHECK(deltas.size() >= 2);
    CHECK(extract_rset(f) == rsets.front());
  }
  CHECK_THROWS_AS(
      extract_all_rsets(find_disconnected_families(3, 2,
                                                   SearchScope::exhaustive)[0]),
      CharacteristicMismatch);
}
