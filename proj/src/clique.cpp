#include "derange/clique.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <cstring>
#include <random>
#include <sstream>

#include "derange/bitgraph.hpp"
#include "derange/parallel.hpp"

namespace derange {

namespace {

constexpr std::size_t kMaxWords = 12;  // ceil(6!/64)

using Row = std::array<std::uint8_t, kMaxDegree>;  // 0-based images

MaximalClique clique_from_rows(int n, std::span<const Row> rows) {
  MaximalClique c;
  c.n = n;
  c.members.reserve(rows.size());
  std::array<int, kMaxDegree> images;
  for (const Row& row : rows) {
    for (int i = 0; i < n; ++i) images[i] = row[i] + 1;
    c.members.push_back(
        Permutation::from_images(std::span<const int>(images.data(), n)));
  }
  return c;
}

// Depth-first extension in lexicographic member order.  Candidate rows are
// produced against per-column used-symbol masks, which is exactly
// Latin-rectangle row extension.  Members of a clique differ in every
// column, so "lexicographically greater than the previous member" reduces
// to a constraint on the first image.
class CliqueDfs {
 public:
  CliqueDfs(int n, std::function<void(std::span<const Row>)> emit)
      : n_(n), full_((1u << n) - 1), emit_(std::move(emit)) {
    members_.reserve(static_cast<size_t>(n));
  }

  void push_prefix(const Row& row) {
    for (int x = 0; x < n_; ++x) col_used_[x] |= 1u << row[x];
    members_.push_back(row);
  }

  std::uint64_t count() const { return count_; }

  void run() { extend(); }

 private:
  void extend() {
    if (static_cast<int>(members_.size()) == n_) {
      ++count_;
      if (emit_) emit_(members_);
      return;
    }
    Row row{};
    gen(0, 0, row);
  }

  void gen(int pos, unsigned row_used, Row& row) {
    if (pos == n_) {
      members_.push_back(row);
      extend();
      members_.pop_back();
      return;
    }
    unsigned avail = full_ & ~col_used_[pos] & ~row_used;
    if (pos == 0 && !members_.empty())
      avail &= ~((2u << members_.back()[0]) - 1u);
    while (avail) {
      const int s = std::countr_zero(avail);
      avail &= avail - 1;
      row[pos] = static_cast<std::uint8_t>(s);
      col_used_[pos] |= 1u << s;
      gen(pos + 1, row_used | (1u << s), row);
      col_used_[pos] ^= 1u << s;
    }
  }

  int n_;
  unsigned full_;
  std::function<void(std::span<const Row>)> emit_;
  std::vector<Row> members_;
  std::array<unsigned, kMaxDegree> col_used_{};
  std::uint64_t count_ = 0;
};

Row row_of(const Permutation& p) {
  Row row{};
  for (int x = 1; x <= p.degree(); ++x)
    row[x - 1] = static_cast<std::uint8_t>(p(x) - 1);
  return row;
}

// --- rank-level clique search inside candidate masks ---------------------

std::size_t mask_words(const DerangementGraph& g) {
  return g.adj.words_per_row;
}

void all_vertices_mask(const DerangementGraph& g, std::uint64_t* out) {
  const std::size_t words = mask_words(g);
  const std::size_t size = g.perms.size();
  for (std::size_t w = 0; w < words; ++w) out[w] = ~0ull;
  const unsigned tail = size & 63;
  if (tail) out[words - 1] = (1ull << tail) - 1;
}

// Vertices with no X_n edge into the clique: AND of complemented rows.
void partner_candidates(const DerangementGraph& g,
                        std::span<const std::uint32_t> clique,
                        std::uint64_t* out) {
  const std::size_t words = mask_words(g);
  all_vertices_mask(g, out);
  for (const std::uint32_t m : clique) {
    const std::uint64_t* row = g.adj.row(m);
    for (std::size_t w = 0; w < words; ++w) out[w] &= ~row[w];
  }
}

std::uint64_t popcount_mask(const std::uint64_t* mask, std::size_t words) {
  std::uint64_t total = 0;
  for (std::size_t w = 0; w < words; ++w)
    total += static_cast<std::uint64_t>(std::popcount(mask[w]));
  return total;
}

// Enumerates size-target cliques inside the mask with ascending vertex
// ranks; emits in canonical order.  Returns false from emit to stop early.
bool mask_clique_dfs(const DerangementGraph& g, const std::uint64_t* cand,
                     int target, std::vector<std::uint32_t>& members,
                     const std::function<bool(std::span<const std::uint32_t>)>& emit) {
  const std::size_t words = mask_words(g);
  const std::uint64_t remaining = popcount_mask(cand, words);
  if (members.size() + remaining < static_cast<std::size_t>(target))
    return true;
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t bits = cand[w];
    while (bits) {
      const auto v = static_cast<std::uint32_t>(
          (w << 6) + static_cast<unsigned>(std::countr_zero(bits)));
      bits &= bits - 1;
      members.push_back(v);
      if (members.size() == static_cast<std::size_t>(target)) {
        const bool keep_going = emit(members);
        members.pop_back();
        if (!keep_going) return false;
        continue;
      }
      std::array<std::uint64_t, kMaxWords> next{};
      const std::uint64_t* adj_row = g.adj.row(v);
      for (std::size_t u = 0; u < words; ++u) next[u] = cand[u] & adj_row[u];
      // keep only vertices ranked above v
      for (std::size_t u = 0; u < w; ++u) next[u] = 0;
      next[w] &= ~((2ull << (v & 63)) - 1ull);
      const bool keep_going =
          mask_clique_dfs(g, next.data(), target, members, emit);
      members.pop_back();
      if (!keep_going) return false;
    }
  }
  return true;
}

MaximalClique clique_from_ranks(const DerangementGraph& g,
                                std::span<const std::uint32_t> ranks) {
  MaximalClique c;
  c.n = g.n;
  c.members.reserve(ranks.size());
  for (const auto r : ranks) c.members.push_back(g.perms[r]);
  return c;
}

std::vector<std::vector<std::uint32_t>> identity_cliques_as_ranks(
    int n, const CacheOptions& cache) {
  EnumerateOptions opts;
  opts.identity_only = true;
  opts.cache = cache;
  std::vector<std::vector<std::uint32_t>> out;
  enumerate_maximal_cliques(n, opts, [&](const MaximalClique& c) {
    std::vector<std::uint32_t> ranks;
    ranks.reserve(c.members.size());
    for (const auto& m : c.members)
      ranks.push_back(static_cast<std::uint32_t>(lex_rank(m)));
    out.push_back(std::move(ranks));
  });
  return out;
}

// --- checkpoint serialization for the long n = 6 scan --------------------

std::vector<std::byte> encode_pair_state(const PairSearchTally& tally,
                                         std::span<const DisconnectedFamily> families) {
  std::string text;
  const std::uint64_t raw[5] = {tally.base_cliques, tally.with_candidates,
                                tally.candidate_ge_n, tally.max_candidates,
                                tally.partners};
  text.append(reinterpret_cast<const char*>(raw), sizeof raw);
  text += format_family_file(families);
  const auto* p = reinterpret_cast<const std::byte*>(text.data());
  return std::vector<std::byte>(p, p + text.size());
}

bool decode_pair_state(std::span<const std::byte> state, PairSearchTally& tally,
                       std::vector<DisconnectedFamily>& families) {
  if (state.size() < 5 * sizeof(std::uint64_t)) return false;
  std::uint64_t raw[5];
  std::memcpy(raw, state.data(), sizeof raw);
  tally = {raw[0], raw[1], raw[2], raw[3], raw[4]};
  const std::string_view text(
      reinterpret_cast<const char*>(state.data()) + sizeof raw,
      state.size() - sizeof raw);
  try {
    families = parse_family_file(text);
  } catch (const Error&) {
    return false;
  }
  return true;
}

}  // namespace

MaximalClique MaximalClique::of(std::vector<Permutation> members) {
  if (members.empty()) throw Error("empty clique");
  const int n = members.front().degree();
  for (const auto& m : members)
    if (m.degree() != n) throw DegreeMismatch("clique members of mixed degree");
  std::sort(members.begin(), members.end());
  if (static_cast<int>(members.size()) != n)
    throw Error("maximal cliques in X_" + std::to_string(n) +
                " have exactly " + std::to_string(n) + " members, got " +
                std::to_string(members.size()));
  for (size_t i = 0; i < members.size(); ++i)
    for (size_t j = i + 1; j < members.size(); ++j)
      if (n_fixed(members[i], members[j]) != 0)
        throw Error("not a clique: members " + std::to_string(i + 1) + " and " +
                    std::to_string(j + 1) + " agree somewhere");
  MaximalClique c;
  c.n = n;
  c.members = std::move(members);
  return c;
}

bool MaximalClique::contains(const Permutation& p) const {
  return std::binary_search(members.begin(), members.end(), p);
}

bool are_disconnected(const MaximalClique& c1, const MaximalClique& c2) {
  if (c1.n != c2.n)
    throw DegreeMismatch("are_disconnected: degrees " + std::to_string(c1.n) +
                         " and " + std::to_string(c2.n));
  for (const auto& sigma : c1.members)
    for (const auto& omega : c2.members)
      if (n_fixed(sigma, omega) == 0) return false;
  return true;
}

MaximalClique translate(const MaximalClique& c, const Permutation& tau) {
  const Permutation tau_inv = tau.inverse();
  std::vector<Permutation> members;
  members.reserve(c.members.size());
  for (const auto& m : c.members) members.push_back(compose(m, tau_inv));
  std::sort(members.begin(), members.end());
  MaximalClique out;
  out.n = c.n;
  out.members = std::move(members);
  return out;
}

DisconnectedFamily DisconnectedFamily::of(std::vector<MaximalClique> cliques) {
  if (cliques.empty()) throw Error("empty family");
  std::sort(cliques.begin(), cliques.end());
  for (size_t i = 0; i < cliques.size(); ++i)
    for (size_t j = i + 1; j < cliques.size(); ++j)
      if (!are_disconnected(cliques[i], cliques[j]))
        throw Error("family cliques " + std::to_string(i + 1) + " and " +
                    std::to_string(j + 1) + " share an edge");
  DisconnectedFamily f;
  f.n = cliques.front().n;
  f.cliques = std::move(cliques);
  return f;
}

std::uint64_t enumerate_maximal_cliques(
    int n, const EnumerateOptions& opts,
    const std::function<void(const MaximalClique&)>& sink) {
  if (n < 2 || n > 6)
    throw Error("clique enumeration supports 2 <= n <= 6, got " +
                std::to_string(n));
  if (n == 6 && !opts.identity_only && !opts.allow_long)
    throw ResourceLimit(
        "full clique enumeration at n=6 walks ~1.1M cliques; pass --allow-long",
        "--allow-long");

  auto emit = [&](std::span<const Row> rows) {
    if (sink) sink(clique_from_rows(n, rows));
  };

  const unsigned threads = resolve_threads(opts.threads);
  if (opts.identity_only || threads <= 1) {
    CliqueDfs dfs(n, sink ? emit : std::function<void(std::span<const Row>)>{});
    if (opts.identity_only) dfs.push_prefix(row_of(Permutation::identity(n)));
    dfs.run();
    return dfs.count();
  }

  // Workers take first-member branches; results merge in canonical order.
  const std::uint64_t branches = factorial(n);
  struct BranchResult {
    std::uint64_t count = 0;
    std::vector<MaximalClique> cliques;
  };
  std::uint64_t total = 0;
  parallel_for_ordered<BranchResult>(
      branches, threads,
      [&](std::uint64_t b) {
        BranchResult res;
        CliqueDfs dfs(n, [&](std::span<const Row> rows) {
          if (sink) res.cliques.push_back(clique_from_rows(n, rows));
        });
        dfs.push_prefix(row_of(lex_unrank(n, b)));
        dfs.run();
        res.count = dfs.count();
        return res;
      },
      [&](std::uint64_t, BranchResult&& res) {
        total += res.count;
        if (sink)
          for (auto& c : res.cliques) sink(c);
      });
  return total;
}

std::vector<MaximalClique> maximal_cliques(int n, const EnumerateOptions& opts) {
  std::vector<MaximalClique> out;
  enumerate_maximal_cliques(n, opts,
                            [&](const MaximalClique& c) { out.push_back(c); });
  return out;
}

PairSearchResult exhaustive_pair_search(int n, const FamilySearchOptions& opts) {
  if (n < 3 || n > 6)
    throw Error("pair search supports 3 <= n <= 6, got " + std::to_string(n));
  if (n == 6 && !opts.allow_long)
    throw ResourceLimit(
        "the n=6 disconnected-pair scan covers 9408 identity cliques; pass "
        "--allow-long",
        "--allow-long");

  const DerangementGraph& g = DerangementGraph::get(n, opts.cache);
  const auto bases = identity_cliques_as_ranks(n, opts.cache);
  const std::size_t words = mask_words(g);

  PairSearchResult result;
  std::uint64_t resume_done = 0;
  const bool use_checkpoint = (n == 6) && opts.checkpoint;
  const std::string ck_key = "pairsearch-n" + std::to_string(n) + "-v" +
                             std::to_string(kCacheFormatVersion);
  if (use_checkpoint) {
    if (auto ck = checkpoint_load(opts.cache, ck_key)) {
      PairSearchTally tally;
      std::vector<DisconnectedFamily> families;
      if (ck->done <= bases.size() &&
          decode_pair_state(ck->state, tally, families)) {
        resume_done = ck->done;
        result.tally = tally;
        result.families = std::move(families);
      }
    }
  }

  struct Item {
    bool skipped = false;
    std::uint64_t candidates = 0;
    std::vector<std::vector<std::uint32_t>> partners;
  };

  std::uint64_t consumed = 0;  // counts every index, skipped prefix included
  parallel_for_ordered<Item>(
      bases.size(), opts.threads,
      [&](std::uint64_t i) {
        Item item;
        if (i < resume_done) {
          item.skipped = true;
          return item;
        }
        std::array<std::uint64_t, kMaxWords> mask{};
        partner_candidates(g, bases[i], mask.data());
        item.candidates = popcount_mask(mask.data(), words);
        std::vector<std::uint32_t> members;
        mask_clique_dfs(g, mask.data(), n, members,
                        [&](std::span<const std::uint32_t> ranks) {
                          item.partners.emplace_back(ranks.begin(), ranks.end());
                          return true;
                        });
        return item;
      },
      [&](std::uint64_t i, Item&& item) {
        if (!item.skipped) {
          auto& t = result.tally;
          t.base_cliques += 1;
          t.with_candidates += item.candidates > 0;
          t.candidate_ge_n += item.candidates >= static_cast<std::uint64_t>(n);
          t.max_candidates = std::max(t.max_candidates, item.candidates);
          t.partners += item.partners.size();
          for (const auto& ranks : item.partners) {
            DisconnectedFamily f;
            f.n = n;
            f.cliques = {clique_from_ranks(g, bases[i]),
                         clique_from_ranks(g, ranks)};
            result.families.push_back(std::move(f));
          }
        }
        ++consumed;
        if (use_checkpoint && (consumed % 512 == 0))
          checkpoint_store(opts.cache, ck_key,
                           Checkpoint{consumed, encode_pair_state(
                                                    result.tally,
                                                    result.families)});
      });

  if (use_checkpoint) checkpoint_clear(opts.cache, ck_key);
  return result;
}

std::vector<DisconnectedFamily> find_disconnected_families(
    int n, int r, SearchScope scope, const FamilySearchOptions& opts) {
  if (n < 3 || n > 6)
    throw Error("family search supports 3 <= n <= 6, got " + std::to_string(n));
  if (r < 2) throw Error("family size r must be at least 2");
  if (n == 6 && !opts.allow_long)
    throw ResourceLimit(
        "disconnected-family search at n=6 is long-running; pass --allow-long",
        "--allow-long");

  if (r == 2 && scope == SearchScope::exhaustive)
    return exhaustive_pair_search(n, opts).families;

  const DerangementGraph& g = DerangementGraph::get(n, opts.cache);
  const auto bases = identity_cliques_as_ranks(n, opts.cache);
  const std::size_t words = mask_words(g);

  std::vector<DisconnectedFamily> out;
  bool stop = false;

  std::vector<std::vector<std::uint32_t>> chain;
  std::function<void(const std::uint64_t*)> extend =
      [&](const std::uint64_t* mask) {
        if (stop) return;
        if (chain.size() == static_cast<std::size_t>(r)) {
          DisconnectedFamily f;
          f.n = n;
          for (const auto& ranks : chain)
            f.cliques.push_back(clique_from_ranks(g, ranks));
          out.push_back(std::move(f));
          if (scope == SearchScope::first_found) stop = true;
          return;
        }
        std::vector<std::uint32_t> members;
        mask_clique_dfs(g, mask, n, members,
                        [&](std::span<const std::uint32_t> ranks) {
                          // later cliques must rank above the previous one
                          if (chain.size() >= 2) {
                            const auto& prev = chain.back();
                            if (!std::lexicographical_compare(
                                    prev.begin(), prev.end(), ranks.begin(),
                                    ranks.end()))
                              return !stop;
                          }
                          std::vector<std::uint32_t> k(ranks.begin(),
                                                       ranks.end());
                          std::array<std::uint64_t, kMaxWords> next{};
                          std::array<std::uint64_t, kMaxWords> kmask{};
                          partner_candidates(g, k, kmask.data());
                          for (std::size_t w = 0; w < words; ++w)
                            next[w] = mask[w] & kmask[w];
                          chain.push_back(std::move(k));
                          extend(next.data());
                          chain.pop_back();
                          return !stop;
                        });
      };

  for (const auto& base : bases) {
    if (stop) break;
    std::array<std::uint64_t, kMaxWords> mask{};
    partner_candidates(g, base, mask.data());
    chain.assign(1, base);
    extend(mask.data());
  }
  return out;
}

X5StructureReport x5_structure_report(const FamilySearchOptions& opts) {
  const int n = 5;
  const DerangementGraph& g = DerangementGraph::get(n, opts.cache);
  const auto bases = identity_cliques_as_ranks(n, opts.cache);

  X5StructureReport report;
  report.identity_cliques = bases.size();
  report.all_cyclic = true;

  for (const auto& base : bases) {
    std::array<std::uint64_t, kMaxWords> mask{};
    partner_candidates(g, base, mask.data());
    bool has_partner = false;
    std::vector<std::uint32_t> members;
    mask_clique_dfs(g, mask.data(), n, members,
                    [&](std::span<const std::uint32_t>) {
                      has_partner = true;
                      return false;  // first partner settles participation
                    });
    if (!has_partner) continue;
    report.participating += 1;

    const MaximalClique c = clique_from_ranks(g, base);
    for (const auto& m : c.members)
      if (m.is_derangement() && !m.is_even()) report.odd_derangement_members++;

    // Cyclic form: {e, s, s^2, s^3, s^4} for a 5-cycle s.
    bool cyclic = c.members.front().is_identity();
    if (cyclic) {
      const Permutation& s = c.members[1];
      cyclic = (cycle_type(s).parts == std::vector<int>{5});
      if (cyclic) {
        std::vector<Permutation> powers{Permutation::identity(n)};
        Permutation acc = s;
        for (int k = 1; k < n; ++k) {
          powers.push_back(acc);
          acc = compose(acc, s);
        }
        std::sort(powers.begin(), powers.end());
        cyclic = std::equal(powers.begin(), powers.end(), c.members.begin());
      }
    }
    if (cyclic)
      report.participating_cyclic += 1;
    else
      report.all_cyclic = false;
  }
  return report;
}

DisconnectedFamily family_from_squares(std::span<const LatinSquare> squares) {
  if (squares.empty()) throw Error("family_from_squares: no squares");
  const int n = squares.front().order();
  for (const auto& s : squares) {
    if (s.order() != n) throw DegreeMismatch("squares of mixed order");
    if (!is_latin(s)) throw NotOrthogonal("input square is not Latin");
  }
  for (size_t i = 0; i < squares.size(); ++i)
    for (size_t j = i + 1; j < squares.size(); ++j)
      if (!are_orthogonal(squares[i], squares[j]))
        throw NotOrthogonal("squares " + std::to_string(i + 1) + " and " +
                            std::to_string(j + 1) + " are not orthogonal");

  std::vector<MaximalClique> cliques;
  for (const auto& sq : squares) {
    std::vector<Permutation> members;
    for (int s = 1; s <= n; ++s) {
      std::vector<int> images(static_cast<size_t>(n));
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          if (sq.at(i, j) == s) images[static_cast<size_t>(i - 1)] = j;
      members.push_back(Permutation::from_images(images));
    }
    cliques.push_back(MaximalClique::of(std::move(members)));
  }
  return DisconnectedFamily::of(std::move(cliques));
}

std::string format_clique(const MaximalClique& c) {
  return format_permutation_list(c.members);
}

MaximalClique parse_clique(std::string_view line) {
  return MaximalClique::of(parse_permutation_list(line));
}

std::string format_family_file(std::span<const DisconnectedFamily> families) {
  std::string out;
  for (size_t k = 0; k < families.size(); ++k) {
    out += "# family " + std::to_string(k + 1) + "\n";
    for (const auto& c : families[k].cliques) out += format_clique(c) + "\n";
  }
  return out;
}

std::vector<DisconnectedFamily> parse_family_file(std::string_view text) {
  std::vector<DisconnectedFamily> families;
  std::vector<MaximalClique> current;
  auto flush = [&] {
    if (!current.empty())
      families.push_back(DisconnectedFamily::of(std::move(current)));
    current.clear();
  };
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# family", 0) == 0) {
      flush();
      continue;
    }
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    current.push_back(parse_clique(line));
  }
  flush();
  return families;
}

std::vector<Permutation> random_greedy_clique_members(int n, std::uint64_t seed,
                                                      const CacheOptions& cache) {
  const DerangementGraph& g = DerangementGraph::get(n, cache);
  std::mt19937_64 rng(seed);
  const std::size_t size = g.perms.size();
  const std::size_t words = g.adj.words_per_row;

  std::vector<std::uint64_t> cand(words, ~0ull);
  if (size & 63) cand[words - 1] = (1ull << (size & 63)) - 1;

  std::vector<Permutation> members;
  std::uint32_t v =
      static_cast<std::uint32_t>(rng() % static_cast<std::uint64_t>(size));
  for (;;) {
    members.push_back(g.perms[v]);
    const std::uint64_t* row = g.adj.row(v);
    for (std::size_t w = 0; w < words; ++w) cand[w] &= row[w];
    std::vector<std::uint32_t> options;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t bits = cand[w];
      while (bits) {
        options.push_back(static_cast<std::uint32_t>(
            (w << 6) + static_cast<unsigned>(std::countr_zero(bits))));
        bits &= bits - 1;
      }
    }
    if (options.empty()) break;
    v = options[rng() % options.size()];
  }
  std::sort(members.begin(), members.end());
  return members;
}

}  // namespace derange
