#include "derange/spectral.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "derange/parallel.hpp"

namespace derange {

namespace {

std::string fixmat_key(int n) {
  return "fixmat-n" + std::to_string(n) + "-v" +
         std::to_string(kCacheFormatVersion);
}

FixedPointMatrix compute_fixed_point_matrix(int n) {
  FixedPointMatrix m;
  m.n = n;
  m.size = factorial(n);
  m.entries.assign(m.size * m.size, 0);
  const auto perms = all_permutations(n);
  parallel_for_ordered<int>(
      m.size, n >= 6 ? 0 : 1,
      [&](std::uint64_t r) {
        std::uint8_t* row = m.entries.data() + r * m.size;
        for (std::size_t c = 0; c < m.size; ++c)
          row[c] = static_cast<std::uint8_t>(n_fixed(perms[r], perms[c]));
        return 0;
      },
      [](std::uint64_t, int&&) {});
  return m;
}

void check_family(const DisconnectedFamily& family) {
  if (family.cliques.size() < 1) throw Error("empty family");
  for (size_t i = 0; i < family.cliques.size(); ++i)
    for (size_t j = i + 1; j < family.cliques.size(); ++j)
      if (!are_disconnected(family.cliques[i], family.cliques[j]))
        throw Error("family is not pairwise disconnected");
}

void check_characteristic(int n, std::int64_t p) {
  if (!is_prime(p))
    throw CompositeModulus("characteristic " + std::to_string(p) +
                           " is not prime");
  if (n % p != 0)
    throw CharacteristicMismatch("characteristic " + std::to_string(p) +
                                 " does not divide n = " + std::to_string(n));
}

// Member rows of the fixed-point matrix, reduced mod p.
PrimeFieldMatrix member_rows_mod_p(const DisconnectedFamily& family,
                                   std::int64_t p, const FixedPointMatrix& m,
                                   std::vector<Permutation>* order_out) {
  std::vector<Permutation> order;
  for (const auto& c : family.cliques)
    order.insert(order.end(), c.members.begin(), c.members.end());
  PrimeFieldMatrix rows = PrimeFieldMatrix::zero(p, order.size(), m.size);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t r = lex_rank(order[i]);
    for (std::size_t c = 0; c < m.size; ++c)
      rows.set(i, c, static_cast<std::uint8_t>(m.at(r, c) % p));
  }
  if (order_out) *order_out = std::move(order);
  return rows;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  while (b) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

}  // namespace

const FixedPointMatrix& fixed_point_matrix(int n, const CacheOptions& cache) {
  if (n < 1 || n > 6)
    throw ResourceLimit("fixed-point matrix materialized only for n <= 6",
                        "--allow-long");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<FixedPointMatrix>> memo;
  std::lock_guard<std::mutex> lock(mu);
  const auto it = memo.find(n);
  if (it != memo.end()) return *it->second;

  auto m = std::make_unique<FixedPointMatrix>();
  const std::size_t size = factorial(n);
  bool loaded = false;
  if (auto payload = cache_load(cache, fixmat_key(n))) {
    if (payload->size() == size * size) {
      m->n = n;
      m->size = size;
      m->entries.resize(size * size);
      std::memcpy(m->entries.data(), payload->data(), payload->size());
      loaded = true;
    }
  }
  if (!loaded) {
    *m = compute_fixed_point_matrix(n);
    cache_store(cache, fixmat_key(n),
                std::span<const std::byte>(
                    reinterpret_cast<const std::byte*>(m->entries.data()),
                    m->entries.size()));
  }
  auto& slot = memo[n];
  slot = std::move(m);
  return *slot;
}

std::string Field::str() const {
  return kind == Kind::rationals ? "rational" : "gf" + std::to_string(p);
}

std::size_t projection_image_dim(int n, const Field& field,
                                 const CacheOptions& cache) {
  const FixedPointMatrix& m = fixed_point_matrix(n, cache);
  if (field.kind == Field::Kind::rationals) {
    RationalMatrix rm = RationalMatrix::zero(m.size, m.size);
    for (std::size_t i = 0; i < m.entries.size(); ++i)
      rm.entries[i] = static_cast<int>(m.entries[i]);
    return rank_rational(rm);
  }
  if (!is_prime(field.p))
    throw CompositeModulus("characteristic " + std::to_string(field.p) +
                           " is not prime");
  PrimeFieldMatrix pm = PrimeFieldMatrix::zero(field.p, m.size, m.size);
  for (std::size_t i = 0; i < m.entries.size(); ++i)
    pm.entries[i] = static_cast<std::uint8_t>(m.entries[i] % field.p);
  return rank_gf(pm);
}

std::int64_t predicted_projection_dim(int n, const Field& field) {
  const std::int64_t nn = n;
  if (field.kind == Field::Kind::rationals) return (nn - 1) * (nn - 1) + 1;
  if (n % field.p == 0) return (nn - 1) * (nn - 1) - 2 * nn + 4;
  return -1;
}

std::int64_t family_span_bound(int n, int r) {
  const std::int64_t nn = n;
  return (nn * nn - 4 * nn + r + 5) / 2;  // floor
}

std::size_t family_span_dim(const DisconnectedFamily& family, std::int64_t p,
                            const CacheOptions& cache) {
  check_characteristic(family.n, p);
  check_family(family);
  const FixedPointMatrix& m = fixed_point_matrix(family.n, cache);
  const PrimeFieldMatrix rows = member_rows_mod_p(family, p, m, nullptr);
  const std::size_t dim = rank_gf(rows);
  const auto bound = family_span_bound(family.n,
                                       static_cast<int>(family.cliques.size()));
  if (static_cast<std::int64_t>(dim) > bound)
    throw VerificationFailure("family span dimension " + std::to_string(dim) +
                              " exceeds modular bound " +
                              std::to_string(bound));
  return dim;
}

DependencyBasis dependency_basis(const DisconnectedFamily& family,
                                 std::int64_t p, const CacheOptions& cache) {
  check_characteristic(family.n, p);
  check_family(family);
  const int n = family.n;
  const auto r = family.cliques.size();
  const FixedPointMatrix& m = fixed_point_matrix(n, cache);

  DependencyBasis basis;
  basis.n = n;
  basis.p = p;
  const PrimeFieldMatrix rows =
      member_rows_mod_p(family, p, m, &basis.member_order);
  const std::size_t members = rows.rows;

  // Left-nullspace: vectors f with sum_sigma f(sigma) n(sigma;tau) = 0 for
  // all tau, i.e. the kernel of the transposed member-row matrix.
  PrimeFieldMatrix transposed = PrimeFieldMatrix::zero(p, rows.cols, members);
  for (std::size_t i = 0; i < members; ++i)
    for (std::size_t c = 0; c < rows.cols; ++c)
      transposed.set(c, i, rows.at(i, c));
  const auto kernel = nullspace_gf(transposed);

  // The clique indicators are dependencies because each clique row-sum is
  // the constant n = 0 mod p.
  std::vector<std::vector<std::uint8_t>> indicators;
  std::size_t offset = 0;
  for (const auto& clique : family.cliques) {
    std::vector<std::uint8_t> v(members, 0);
    for (std::size_t i = 0; i < clique.members.size(); ++i) v[offset + i] = 1;
    indicators.push_back(std::move(v));
    offset += clique.members.size();
  }

  // Split the kernel into the indicator span and a reduced complement.
  // Indicators have disjoint supports, so each one's first coordinate serves
  // as its pivot.
  std::vector<std::pair<std::size_t, std::vector<std::uint8_t>>> pivots;
  auto reduce = [&](std::vector<std::uint8_t> v) {
    for (const auto& [col, row] : pivots) {
      const std::uint32_t coeff = v[col];
      if (!coeff) continue;
      for (std::size_t i = 0; i < members; ++i) {
        const auto q = static_cast<std::uint32_t>(p);
        v[i] = static_cast<std::uint8_t>(
            (v[i] + q * q - coeff * row[i]) % q);
      }
    }
    return v;
  };
  auto add_pivot = [&](const std::vector<std::uint8_t>& v) {
    const auto it = std::find_if(v.begin(), v.end(),
                                 [](std::uint8_t x) { return x != 0; });
    assert(it != v.end());
    const auto col = static_cast<std::size_t>(it - v.begin());
    // normalize pivot to 1
    std::vector<std::uint8_t> row = v;
    std::uint32_t inv = 1;
    for (std::uint32_t cand = 1; cand < static_cast<std::uint32_t>(p); ++cand)
      if (cand * (*it) % p == 1) {
        inv = cand;
        break;
      }
    for (auto& x : row) x = static_cast<std::uint8_t>(x * inv % p);
    pivots.emplace_back(col, std::move(row));
  };

  for (const auto& ind : indicators) add_pivot(ind);
  for (const auto& v : kernel) {
    auto reduced = reduce(v);
    if (std::all_of(reduced.begin(), reduced.end(),
                    [](std::uint8_t x) { return x == 0; }))
      continue;
    basis.non_clique_vectors.push_back(reduced);
    add_pivot(reduced);
  }
  basis.clique_vectors = std::move(indicators);

  // Re-verify every emitted vector against every tau in S_n.
  std::vector<std::size_t> ranks;
  ranks.reserve(members);
  for (const auto& sigma : basis.member_order) ranks.push_back(lex_rank(sigma));
  auto verify = [&](const std::vector<std::uint8_t>& v) {
    for (std::size_t tau = 0; tau < m.size; ++tau) {
      std::uint64_t acc = 0;
      for (std::size_t i = 0; i < members; ++i)
        acc += static_cast<std::uint64_t>(v[i]) * m.at(ranks[i], tau);
      if (acc % static_cast<std::uint64_t>(p) != 0)
        throw VerificationFailure("dependency fails at some tau");
    }
  };
  for (const auto& v : basis.clique_vectors) verify(v);
  for (const auto& v : basis.non_clique_vectors) verify(v);

  // A complement vector constant on every clique would lie in the indicator
  // span, so each one must be non-constant on at least one clique.
  for (const auto& v : basis.non_clique_vectors) {
    bool non_constant = false;
    std::size_t start = 0;
    for (const auto& clique : family.cliques) {
      const std::size_t len = clique.members.size();
      for (std::size_t i = 1; i < len; ++i)
        if (v[start + i] != v[start]) non_constant = true;
      start += len;
    }
    if (!non_constant)
      throw VerificationFailure("complement vector constant on all cliques");
  }

  // Guaranteed count from the span bound.
  const auto guaranteed =
      static_cast<std::int64_t>(members) -
      family_span_bound(n, static_cast<int>(r)) - static_cast<std::int64_t>(r);
  if (static_cast<std::int64_t>(basis.non_clique_vectors.size()) < guaranteed)
    throw VerificationFailure("fewer non-clique dependencies than guaranteed");
  return basis;
}

std::int64_t ClassFunction::at(const CycleType& type) const {
  const auto it = values.find(type);
  if (it == values.end())
    throw Error("class function has no value for cycle type " + type.str());
  return it->second;
}

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& acc,
                    std::vector<CycleType>& out) {
  if (remaining == 0) {
    out.push_back(CycleType{acc});
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    acc.push_back(part);
    partitions_rec(remaining - part, part, acc, out);
    acc.pop_back();
  }
}

std::vector<CycleType> partitions(int n) {
  std::vector<CycleType> out;
  std::vector<int> acc;
  partitions_rec(n, n, acc, out);
  return out;
}

// Number of permutations of S_n with the given cycle type.
std::uint64_t class_size(int n, const CycleType& type) {
  std::uint64_t denom = 1;
  int run = 0;
  int prev = 0;
  for (const int part : type.parts) {
    denom *= static_cast<std::uint64_t>(part);
    if (part == prev) {
      ++run;
      denom *= static_cast<std::uint64_t>(run);
    } else {
      prev = part;
      run = 1;
    }
  }
  return factorial(n) / denom;
}

ClassFunction build_character(int n, std::string label,
                              const std::function<std::int64_t(const CycleType&)>& f) {
  ClassFunction chi;
  chi.n = n;
  chi.label = std::move(label);
  for (const auto& type : partitions(n)) chi.values[type] = f(type);
  return chi;
}

}  // namespace

ClassFunction trivial_character(int n) {
  return build_character(n, "trivial", [](const CycleType&) { return 1; });
}

ClassFunction sign_character(int n) {
  return build_character(n, "sign", [n](const CycleType& t) {
    const int transpositions = n - static_cast<int>(t.parts.size());
    return (transpositions % 2 == 0) ? 1 : -1;
  });
}

ClassFunction natural_character(int n) {
  return build_character(n, "natural", [](const CycleType& t) {
    return static_cast<std::int64_t>(
        std::count(t.parts.begin(), t.parts.end(), 1));
  });
}

ClassFunction standard_character(int n) {
  return build_character(n, "standard", [](const CycleType& t) {
    return static_cast<std::int64_t>(
               std::count(t.parts.begin(), t.parts.end(), 1)) - 1;
  });
}

EigenvalueRecord laplacian_eigenvalue(const ClassFunction& chi, std::int64_t d,
                                      int n) {
  if (chi.n != n) throw DegreeMismatch("class function degree differs from n");
  std::vector<int> identity_parts(static_cast<size_t>(n), 1);
  const std::int64_t at_identity = chi.at(CycleType{identity_parts});
  if (d <= 0 || at_identity % d != 0)
    throw NonIntegralTrace("dimension " + std::to_string(d) +
                           " does not divide chi(e) = " +
                           std::to_string(at_identity));

  std::int64_t derangement_sum = 0;
  std::uint64_t derangement_count = 0;
  for (const auto& [type, value] : chi.values) {
    if (std::count(type.parts.begin(), type.parts.end(), 1) != 0) continue;
    const std::uint64_t size = class_size(n, type);
    derangement_sum += static_cast<std::int64_t>(size) * value;
    derangement_count += size;
  }
  if (derangement_count != count_derangements(n))
    throw VerificationFailure("derangement census mismatch");

  // lambda = |Delta| - (1/d) sum = (d |Delta| - sum) / d, reduced.
  std::int64_t num = d * static_cast<std::int64_t>(derangement_count) -
                     derangement_sum;
  std::int64_t den = d;
  const std::int64_t g = gcd64(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return EigenvalueRecord{chi.label, d, num, den};
}

std::int64_t lambda_std(int n) {
  if (n < 2) throw Error("lambda_std needs n >= 2");
  const auto d = static_cast<std::int64_t>(count_derangements(n));
  // D_n (1 + 1/(n-1)) = D_n n / (n-1); exact because (n-1) | D_n.
  if ((d * n) % (n - 1) != 0)
    throw VerificationFailure("lambda_std is not integral");
  return d * n / (n - 1);
}

bool verify_eigenfunction(int n) {
  if (n < 2 || n > 5)
    throw ResourceLimit("dense eigenfunction verification supports n <= 5",
                        "--allow-long");
  const auto perms = all_permutations(n);
  const std::size_t size = perms.size();
  std::vector<std::size_t> derangements;
  for (std::size_t i = 0; i < size; ++i)
    if (perms[i].is_derangement()) derangements.push_back(i);

  const auto dn = static_cast<std::int64_t>(derangements.size());
  const auto lam = lambda_std(n);
  const auto group = static_cast<std::int64_t>(size);

  for (int j = 1; j <= n; ++j)
    for (int k = 1; k <= n; ++k) {
      // g(tau) = [tau(k) = j]; mean subtraction scaled by n!.
      std::int64_t total = 0;
      std::vector<std::int64_t> g(size);
      for (std::size_t t = 0; t < size; ++t) {
        g[t] = (perms[t](k) == j) ? 1 : 0;
        total += g[t];
      }
      for (std::size_t t = 0; t < size; ++t) {
        // Laplacian action on the scaled component h = n! g - total.
        std::int64_t adjacency_sum = 0;
        for (const std::size_t d : derangements) {
          const Permutation moved = compose(perms[d], perms[t]);
          adjacency_sum += (moved(k) == j) ? 1 : 0;
        }
        const std::int64_t h_t = group * g[t] - total;
        const std::int64_t lh_t =
            dn * h_t - (group * adjacency_sum - dn * total);
        if (lh_t != lam * h_t) return false;
      }
    }
  return true;
}

USpaceDims u_space_dims(const DisconnectedFamily& pair,
                        const CacheOptions& cache) {
  if (pair.n != 5 || pair.cliques.size() != 2)
    throw Error("u_space_dims expects a disconnected pair at n = 5");
  check_family(pair);
  const std::int64_t p = 5;
  const FixedPointMatrix& m = fixed_point_matrix(5, cache);

  std::vector<std::size_t> ranks;
  for (const auto& c : pair.cliques)
    for (const auto& member : c.members) ranks.push_back(lex_rank(member));

  // Rows are tau in S_5, columns the 10 members; U is the row space.
  auto build = [&](std::size_t col_begin, std::size_t col_end) {
    PrimeFieldMatrix sub =
        PrimeFieldMatrix::zero(p, m.size, col_end - col_begin);
    for (std::size_t t = 0; t < m.size; ++t)
      for (std::size_t c = col_begin; c < col_end; ++c)
        sub.set(t, c - col_begin,
                static_cast<std::uint8_t>(m.at(ranks[c], t) % p));
    return sub;
  };

  USpaceDims dims;
  dims.dim_u = rank_gf(build(0, ranks.size()));
  dims.dim_c = rank_gf(build(0, 5));
  dims.dim_ct = rank_gf(build(5, 10));
  if (dims.dim_u > 6)
    throw VerificationFailure("dim U exceeds 6 on a disconnected pair");
  if (dims.dim_c != 3 || dims.dim_ct != 3)
    throw VerificationFailure("restricted U-space dimension is not 3");
  return dims;
}

}  // namespace derange
