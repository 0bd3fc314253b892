#include "derange/obstruction.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstring>
#include <set>

#include "derange/bitgraph.hpp"
#include "derange/parallel.hpp"
#include "derange/spectral.hpp"

namespace derange {

namespace {

constexpr std::size_t kMaxWords = 12;

RSet finish_rset(int n, const Permutation& delta, const Permutation& eta1,
                 const Permutation& eta2) {
  RSet r;
  r.n = n;
  r.delta = delta;
  r.eta1 = eta1;
  r.eta2 = eta2;
  const Permutation delta_inv = delta.inverse();
  r.a1 = eta1.sole_fixed_point();
  r.a2 = eta2.sole_fixed_point();
  r.c1 = compose(eta1, delta_inv).sole_fixed_point();
  r.c2 = compose(eta2, delta_inv).sole_fixed_point();
  r.b1 = delta_inv(r.c1);
  r.b2 = delta_inv(r.c2);
  return r;
}

}  // namespace

RSet derive_fixed_data(const Permutation& delta, const Permutation& eta1,
                       const Permutation& eta2) {
  const int n = delta.degree();
  if (eta1.degree() != n || eta2.degree() != n)
    throw DegreeMismatch("R-set members of mixed degree");
  if (!delta.is_derangement())
    throw StructuralReject("delta is not a derangement");
  if (!eta1.is_near_derangement())
    throw StructuralReject("eta1 is not a near-derangement");
  if (!eta2.is_near_derangement())
    throw StructuralReject("eta2 is not a near-derangement");
  const Permutation delta_inv = delta.inverse();
  if (!compose(eta1, delta_inv).is_near_derangement())
    throw StructuralReject("eta1 delta^-1 is not a near-derangement");
  if (!compose(eta2, delta_inv).is_near_derangement())
    throw StructuralReject("eta2 delta^-1 is not a near-derangement");
  if (!compose(eta1, eta2.inverse()).is_derangement())
    throw StructuralReject("eta1 eta2^-1 is not a derangement");
  return finish_rset(n, delta, eta1, eta2);
}

RSet rset_from_set(std::vector<Permutation> members) {
  if (members.size() != 4) throw StructuralReject("R-set needs four members");
  std::sort(members.begin(), members.end());
  if (!members.front().is_identity())
    throw StructuralReject("R-set must contain the identity");
  std::vector<Permutation> deranged, near;
  for (size_t i = 1; i < members.size(); ++i) {
    if (members[i].is_derangement())
      deranged.push_back(members[i]);
    else if (members[i].is_near_derangement())
      near.push_back(members[i]);
    else
      throw StructuralReject("member is neither derangement nor near-derangement");
  }
  if (deranged.size() != 1 || near.size() != 2)
    throw StructuralReject("R-set needs one derangement and two near-derangements");
  return derive_fixed_data(deranged[0], near[0], near[1]);
}

bool parity_check(const RSet& r, ParityMode mode, const CacheOptions& cache) {
  const FixedPointMatrix& m = fixed_point_matrix(r.n, cache);
  const std::size_t rows[4] = {0, lex_rank(r.delta), lex_rank(r.eta1),
                               lex_rank(r.eta2)};
  auto odd_at = [&](std::size_t tau) {
    unsigned sum = 0;
    for (const std::size_t row : rows) sum += m.at(row, tau);
    return (sum & 1u) != 0;
  };
  if (mode == ParityMode::sampled) {
    const auto perms = all_permutations(r.n);
    for (std::size_t t = 0; t < perms.size(); ++t) {
      const auto type = cycle_type(perms[t]).parts;
      if (type.size() == static_cast<size_t>(r.n - 1) && type[0] == 2)
        if (odd_at(t)) return false;
    }
    // Transpositions all even; escalate to the full group.
  }
  for (std::size_t t = 0; t < m.size; ++t)
    if (odd_at(t)) return false;
  return true;
}

bool SixSets::all_six() const {
  for (const auto& s : sets)
    if (s.size() != 6) return false;
  return true;
}

SixSets six_sets(const RSet& r) {
  if (r.n != 6) throw Error("six_sets is specific to degree 6");
  const Permutation di = r.delta.inverse();
  const Permutation e1i = r.eta1.inverse();
  const Permutation e2i = r.eta2.inverse();
  auto make = [](std::initializer_list<int> vals) {
    std::set<int> s(vals);
    return std::vector<int>(s.begin(), s.end());
  };
  SixSets out;
  out.sets[0] = make({r.a1, r.a2, r.b1, r.b2, r.c1, r.c2});
  out.sets[1] = make({r.delta(r.a1), di(r.a1), r.eta2(r.a1), e2i(r.a1),
                      r.a1, r.a2});
  out.sets[2] = make({r.delta(r.a2), di(r.a2), r.eta1(r.a2), e1i(r.a2),
                      r.a1, r.a2});
  out.sets[3] = make({r.c1, r.c2, r.b2, r.delta(r.c2), r.eta1(r.b2),
                      r.delta(e1i(r.c2))});
  out.sets[4] = make({r.c1, r.c2, r.b1, r.delta(r.c1), r.eta2(r.b1),
                      r.delta(e2i(r.c1))});
  return out;
}

RSetStageTally& RSetStageTally::operator+=(const RSetStageTally& o) {
  pairs_considered += o.pairs_considered;
  rejected_eta_product += o.rejected_eta_product;
  entered += o.entered;
  rejected_six_sets += o.rejected_six_sets;
  rejected_placement += o.rejected_placement;
  rejected_parity_prefilter += o.rejected_parity_prefilter;
  rejected_parity_full += o.rejected_parity_full;
  survivors += o.survivors;
  return *this;
}

RSetStageTally RSetSearchCertificate::totals() const {
  RSetStageTally t;
  for (const auto& b : buckets) t += b.tally;
  return t;
}

namespace {

// Bucket order: more cycles first, then lexicographically larger parts, so
// at n = 6 the report reads [2,2,2], [4,2], [3,3], [6].
bool bucket_before(const CycleType& a, const CycleType& b) {
  if (a.parts.size() != b.parts.size()) return a.parts.size() > b.parts.size();
  return a.parts > b.parts;
}

struct SearchTables {
  const DerangementGraph* graph = nullptr;
  const FixedPointMatrix* fixmat = nullptr;
  std::vector<std::uint32_t> derangements;  // ranks, lex order
  std::vector<std::uint32_t> nears;         // ranks, lex order
  std::vector<std::uint32_t> transpositions;
  std::vector<int> sole_fix;  // per near index, the unique fixed point
  BitMatrix parity;           // parity.row(v) bit tau = n(v;tau) mod 2
  std::vector<CycleType> bucket_types;
  std::vector<int> bucket_of_derangement;  // per derangement index
};

SearchTables build_tables(int n, const CacheOptions& cache) {
  SearchTables t;
  t.graph = &DerangementGraph::get(n, cache);
  t.fixmat = &fixed_point_matrix(n, cache);
  const auto& perms = t.graph->perms;
  const std::size_t size = perms.size();

  t.parity = BitMatrix(size, size);
  for (std::size_t v = 0; v < size; ++v)
    for (std::size_t tau = 0; tau < size; ++tau)
      if (t.fixmat->at(v, tau) & 1) t.parity.set(v, tau);

  for (std::size_t i = 0; i < size; ++i) {
    const int fixed = perms[i].fixed_point_count();
    if (fixed == 0)
      t.derangements.push_back(static_cast<std::uint32_t>(i));
    else if (fixed == 1) {
      t.nears.push_back(static_cast<std::uint32_t>(i));
      t.sole_fix.push_back(perms[i].sole_fixed_point());
    }
    const auto type = cycle_type(perms[i]);
    if (type.parts.size() == static_cast<size_t>(n - 1) && type.parts[0] == 2)
      t.transpositions.push_back(static_cast<std::uint32_t>(i));
  }

  std::set<std::vector<int>> seen;
  std::vector<CycleType> types;
  for (const auto d : t.derangements)
    if (seen.insert(cycle_type(perms[d]).parts).second)
      types.push_back(cycle_type(perms[d]));
  std::sort(types.begin(), types.end(), bucket_before);
  t.bucket_types = types;
  for (const auto d : t.derangements) {
    const auto type = cycle_type(perms[d]);
    const auto it = std::find(types.begin(), types.end(), type);
    t.bucket_of_derangement.push_back(static_cast<int>(it - types.begin()));
  }
  return t;
}

struct DeltaOutcome {
  bool skipped = false;
  RSetStageTally tally;
  std::vector<RSet> survivors;
};

DeltaOutcome scan_delta(const SearchTables& t, std::size_t delta_idx,
                        bool placement_pruning) {
  const auto& perms = t.graph->perms;
  const FixedPointMatrix& m = *t.fixmat;
  const std::size_t words = t.parity.words_per_row;
  const int n = t.graph->n;

  DeltaOutcome out;
  const std::uint32_t delta_rank = t.derangements[delta_idx];
  const Permutation& delta = perms[delta_rank];
  const Permutation delta_inv = delta.inverse();

  // eta pool: near-derangements whose product with delta^-1 is also near,
  // i.e. fixed-point count n(eta;delta) = 1.
  struct Eta {
    std::uint32_t rank;
    int a;  // fix(eta)
    int c;  // fix(eta delta^-1)
    int b;  // delta^-1(c)
  };
  std::vector<Eta> pool;
  for (std::size_t i = 0; i < t.nears.size(); ++i) {
    const std::uint32_t rank = t.nears[i];
    if (m.at(rank, delta_rank) != 1) continue;
    const int c = compose(perms[rank], delta_inv).sole_fixed_point();
    pool.push_back(Eta{rank, t.sole_fix[i], c, delta_inv(c)});
  }

  const std::uint64_t* par_e = t.parity.row(0);
  const std::uint64_t* par_d = t.parity.row(delta_rank);

  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      out.tally.pairs_considered++;
      if (m.at(pool[i].rank, pool[j].rank) != 0) {
        out.tally.rejected_eta_product++;
        continue;
      }
      out.tally.entered++;

      RSet r;
      r.n = n;
      r.delta = delta;
      r.eta1 = perms[pool[i].rank];
      r.eta2 = perms[pool[j].rank];
      r.a1 = pool[i].a;
      r.a2 = pool[j].a;
      r.c1 = pool[i].c;
      r.c2 = pool[j].c;
      r.b1 = pool[i].b;
      r.b2 = pool[j].b;

      if (n == 6 && !six_sets(r).all_six()) {
        out.tally.rejected_six_sets++;
        continue;
      }
      if (placement_pruning) {
        const bool ok1 = r.delta(r.a1) == r.b2 || r.delta(r.c2) == r.a1;
        const bool ok2 = r.delta(r.a2) == r.b1 || r.delta(r.c1) == r.a2;
        if (!ok1 || !ok2) {
          out.tally.rejected_placement++;
          continue;
        }
      }

      // Parity of the four-row sum is the XOR of the parity rows.
      std::array<std::uint64_t, kMaxWords> combined{};
      const std::uint64_t* p1 = t.parity.row(pool[i].rank);
      const std::uint64_t* p2 = t.parity.row(pool[j].rank);
      for (std::size_t w = 0; w < words; ++w)
        combined[w] = par_e[w] ^ par_d[w] ^ p1[w] ^ p2[w];

      bool odd_transposition = false;
      for (const auto tau : t.transpositions)
        if ((combined[tau >> 6] >> (tau & 63)) & 1) {
          odd_transposition = true;
          break;
        }
      if (odd_transposition) {
        out.tally.rejected_parity_prefilter++;
        continue;
      }
      bool odd_somewhere = false;
      for (std::size_t w = 0; w < words; ++w)
        if (combined[w]) {
          odd_somewhere = true;
          break;
        }
      if (odd_somewhere) {
        out.tally.rejected_parity_full++;
        continue;
      }
      out.tally.survivors++;
      out.survivors.push_back(r);
    }
  }
  return out;
}

std::vector<std::byte> encode_rset_state(const RSetSearchCertificate& cert) {
  std::string text;
  for (const auto& b : cert.buckets) {
    const std::uint64_t raw[9] = {b.delta_count,
                                  b.tally.pairs_considered,
                                  b.tally.rejected_eta_product,
                                  b.tally.entered,
                                  b.tally.rejected_six_sets,
                                  b.tally.rejected_placement,
                                  b.tally.rejected_parity_prefilter,
                                  b.tally.rejected_parity_full,
                                  b.tally.survivors};
    text.append(reinterpret_cast<const char*>(raw), sizeof raw);
  }
  for (const auto& s : cert.survivors)
    text += format_permutation_list(std::array{s.delta, s.eta1, s.eta2}) + "\n";
  const auto* p = reinterpret_cast<const std::byte*>(text.data());
  return std::vector<std::byte>(p, p + text.size());
}

bool decode_rset_state(std::span<const std::byte> state,
                       RSetSearchCertificate& cert) {
  const std::size_t header = cert.buckets.size() * 9 * sizeof(std::uint64_t);
  if (state.size() < header) return false;
  std::size_t pos = 0;
  for (auto& b : cert.buckets) {
    std::uint64_t raw[9];
    std::memcpy(raw, state.data() + pos, sizeof raw);
    pos += sizeof raw;
    b.delta_count = raw[0];
    b.tally = RSetStageTally{raw[1], raw[2], raw[3], raw[4],
                             raw[5], raw[6], raw[7], raw[8]};
  }
  const std::string_view text(reinterpret_cast<const char*>(state.data()) + pos,
                              state.size() - pos);
  cert.survivors.clear();
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(start, end - start);
    start = end + 1;
    if (line.empty()) continue;
    try {
      const auto perms = parse_permutation_list(line);
      if (perms.size() != 3) return false;
      cert.survivors.push_back(derive_fixed_data(perms[0], perms[1], perms[2]));
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

}  // namespace

RSetSearchCertificate rset_search(int n, const RSetSearchOptions& opts) {
  if (n != 4 && n != 6)
    throw Error("R-set search supports even degrees 4 and 6");

  const SearchTables tables = build_tables(n, opts.cache);

  RSetSearchCertificate cert;
  cert.n = n;
  cert.conjugation_reduced = opts.conjugation_reduced;
  cert.placement_pruning = opts.placement_pruning;
  cert.certified = !opts.conjugation_reduced && !opts.placement_pruning;
  cert.derangements = tables.derangements.size();
  cert.near_derangements = tables.nears.size();
  for (const auto& type : tables.bucket_types)
    cert.buckets.push_back(RSetBucketReport{type, 0, {}});

  std::vector<std::size_t> work;
  if (opts.conjugation_reduced) {
    // One representative delta per cycle type; valid for the verdict since
    // conjugation preserves every R-set property, but tallies only cover
    // the representatives.
    std::set<int> seen;
    for (std::size_t i = 0; i < tables.derangements.size(); ++i)
      if (seen.insert(tables.bucket_of_derangement[i]).second)
        work.push_back(i);
  } else {
    work.resize(tables.derangements.size());
    for (std::size_t i = 0; i < work.size(); ++i) work[i] = i;
  }

  const bool use_checkpoint =
      n == 6 && opts.checkpoint && !opts.conjugation_reduced;
  const std::string ck_key =
      "rsetsearch-n" + std::to_string(n) +
      (opts.placement_pruning ? "-placement" : "") + "-v" +
      std::to_string(kCacheFormatVersion);
  std::uint64_t resume_done = 0;
  if (use_checkpoint) {
    if (auto ck = checkpoint_load(opts.cache, ck_key)) {
      RSetSearchCertificate loaded = cert;
      if (ck->done <= work.size() && decode_rset_state(ck->state, loaded)) {
        resume_done = ck->done;
        cert = std::move(loaded);
      }
    }
  }

  std::uint64_t consumed = 0;  // counts every index, skipped prefix included
  parallel_for_ordered<DeltaOutcome>(
      work.size(), opts.threads,
      [&](std::uint64_t w) {
        if (w < resume_done) return DeltaOutcome{true, {}, {}};
        return scan_delta(tables, work[w], opts.placement_pruning);
      },
      [&](std::uint64_t w, DeltaOutcome&& out) {
        if (!out.skipped) {
          auto& bucket =
              cert.buckets[static_cast<std::size_t>(
                  tables.bucket_of_derangement[work[w]])];
          bucket.delta_count++;
          bucket.tally += out.tally;
          for (auto& s : out.survivors) cert.survivors.push_back(std::move(s));
        }
        ++consumed;
        if (use_checkpoint && consumed % 64 == 0)
          checkpoint_store(opts.cache, ck_key,
                           Checkpoint{consumed, encode_rset_state(cert)});
      });

  if (use_checkpoint) checkpoint_clear(opts.cache, ck_key);
  std::sort(cert.survivors.begin(), cert.survivors.end());
  return cert;
}

RSetSearchCertificate exclusion_suite(const RSetSearchOptions& opts) {
  return rset_search(6, opts);
}

namespace {

// All 0/1 dependency vectors over the member order, i.e. the full GF(2)
// kernel spanned by the basis.
std::vector<std::vector<std::uint8_t>> kernel_elements(
    const DependencyBasis& basis) {
  std::vector<std::vector<std::uint8_t>> gens = basis.clique_vectors;
  gens.insert(gens.end(), basis.non_clique_vectors.begin(),
              basis.non_clique_vectors.end());
  if (gens.size() > 20) throw Error("kernel too large to enumerate");
  const std::size_t members = basis.member_order.size();
  std::vector<std::vector<std::uint8_t>> out;
  for (std::uint64_t combo = 1; combo < (1ull << gens.size()); ++combo) {
    std::vector<std::uint8_t> v(members, 0);
    for (std::size_t g = 0; g < gens.size(); ++g)
      if ((combo >> g) & 1)
        for (std::size_t i = 0; i < members; ++i) v[i] ^= gens[g][i];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

std::vector<RSet> extract_all_rsets(const DisconnectedFamily& pair,
                                    const CacheOptions& cache) {
  if (pair.cliques.size() != 2)
    throw Error("extract_rset expects a disconnected pair");
  const int n = pair.n;
  if (n % 2 != 0)
    throw CharacteristicMismatch("R-set extraction needs even degree");

  const DependencyBasis basis = dependency_basis(pair, 2, cache);
  const std::size_t half = pair.cliques[0].members.size();
  const std::size_t members = basis.member_order.size();

  std::set<RSet> found;
  for (auto v : kernel_elements(basis)) {
    // Normalization moves: symmetric difference with the clique indicators,
    // searching for a 2 + 2 support split.
    for (int variant = 0; variant < 4; ++variant) {
      std::vector<std::uint8_t> w = v;
      if (variant & 1)
        for (std::size_t i = 0; i < half; ++i) w[i] ^= 1;
      if (variant & 2)
        for (std::size_t i = half; i < members; ++i) w[i] ^= 1;
      std::vector<Permutation> in_c, in_ct;
      for (std::size_t i = 0; i < members; ++i)
        if (w[i]) (i < half ? in_c : in_ct).push_back(basis.member_order[i]);
      if (in_c.size() != 2 || in_ct.size() != 2) continue;

      // Translate so the identity lands in R intersect C.
      for (const auto& t : in_c) {
        const Permutation t_inv = t.inverse();
        const Permutation delta =
            compose(in_c[0] == t ? in_c[1] : in_c[0], t_inv);
        Permutation e1 = compose(in_ct[0], t_inv);
        Permutation e2 = compose(in_ct[1], t_inv);
        if (e2 < e1) std::swap(e1, e2);
        found.insert(derive_fixed_data(delta, e1, e2));
      }
    }
  }
  if (found.empty())
    throw NoUsableDependency(
        "every dependency reduces to the clique dependencies");
  return std::vector<RSet>(found.begin(), found.end());
}

RSet extract_rset(const DisconnectedFamily& pair, const CacheOptions& cache) {
  return extract_all_rsets(pair, cache).front();
}

}  // namespace derange
