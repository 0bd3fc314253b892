#include "derange/permutation.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <ostream>
#include <sstream>

namespace derange {

namespace {

void check_degree(int n) {
  if (n < 1 || n > kMaxDegree)
    throw Error("degree " + std::to_string(n) + " outside supported range 1.." +
                std::to_string(kMaxDegree));
}

}  // namespace

Permutation Permutation::identity(int n) {
  check_degree(n);
  Permutation p;
  p.n_ = static_cast<std::uint8_t>(n);
  for (int i = 0; i < n; ++i) p.img_[i] = static_cast<std::uint8_t>(i);
  return p;
}

Permutation Permutation::from_images(std::span<const int> images) {
  const int n = static_cast<int>(images.size());
  check_degree(n);
  unsigned seen = 0;
  Permutation p;
  p.n_ = static_cast<std::uint8_t>(n);
  for (int i = 0; i < n; ++i) {
    const int v = images[i];
    if (v < 1 || v > n)
      throw InvalidPermutation("image " + std::to_string(v) +
                               " outside 1.." + std::to_string(n));
    const unsigned bit = 1u << (v - 1);
    if (seen & bit)
      throw InvalidPermutation("not a bijection: value " + std::to_string(v) +
                               " repeats");
    seen |= bit;
    p.img_[i] = static_cast<std::uint8_t>(v - 1);
  }
  return p;
}

Permutation Permutation::from_cycles(
    int n, std::initializer_list<std::initializer_list<int>> cycles) {
  check_degree(n);
  Permutation p = identity(n);
  unsigned seen = 0;
  for (const auto& cyc : cycles) {
    const auto* data = cyc.begin();
    const int len = static_cast<int>(cyc.size());
    for (int i = 0; i < len; ++i) {
      const int a = data[i];
      const int b = data[(i + 1) % len];
      if (a < 1 || a > n)
        throw InvalidPermutation("cycle entry " + std::to_string(a) +
                                 " outside 1.." + std::to_string(n));
      const unsigned bit = 1u << (a - 1);
      if (seen & bit)
        throw InvalidPermutation("cycles not disjoint at " + std::to_string(a));
      seen |= bit;
      p.img_[a - 1] = static_cast<std::uint8_t>(b - 1);
    }
  }
  return p;
}

Permutation Permutation::parse(std::string_view text) {
  std::vector<int> images;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    try {
      size_t pos = 0;
      const int v = std::stoi(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      images.push_back(v);
    } catch (const std::exception&) {
      throw InvalidPermutation("bad token '" + tok + "' in permutation");
    }
  }
  if (images.empty()) throw InvalidPermutation("empty permutation text");
  return from_images(images);
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.n_ = n_;
  for (int i = 0; i < n_; ++i) p.img_[img_[i]] = static_cast<std::uint8_t>(i);
  return p;
}

int Permutation::fixed_point_count() const {
  int count = 0;
  for (int i = 0; i < n_; ++i) count += (img_[i] == i);
  return count;
}

int Permutation::sole_fixed_point() const {
  int found = 0, where = 0;
  for (int i = 0; i < n_; ++i)
    if (img_[i] == i) {
      ++found;
      where = i + 1;
    }
  if (found != 1)
    throw Error("sole_fixed_point on permutation with " +
                std::to_string(found) + " fixed points");
  return where;
}

bool Permutation::is_even() const {
  // Parity from cycle count: sign = (-1)^(n - #cycles).
  unsigned visited = 0;
  int cycles = 0;
  for (int i = 0; i < n_; ++i) {
    if (visited & (1u << i)) continue;
    ++cycles;
    int j = i;
    while (!(visited & (1u << j))) {
      visited |= 1u << j;
      j = img_[j];
    }
  }
  return ((n_ - cycles) & 1) == 0;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < n_; ++i)
    if (img_[i] != i) return false;
  return true;
}

std::string Permutation::str() const {
  std::string out;
  for (int i = 0; i < n_; ++i) {
    if (i) out += ' ';
    out += std::to_string(img_[i] + 1);
  }
  return out;
}

Permutation compose(const Permutation& sigma, const Permutation& tau) {
  if (sigma.degree() != tau.degree())
    throw DegreeMismatch("compose: degrees " +
                         std::to_string(sigma.degree()) + " and " +
                         std::to_string(tau.degree()));
  const int n = sigma.degree();
  std::array<int, kMaxDegree> images;
  for (int x = 1; x <= n; ++x) images[x - 1] = sigma(tau(x));
  return Permutation::from_images(std::span<const int>(images.data(), n));
}

int n_fixed(const Permutation& sigma, const Permutation& tau) {
  if (sigma.degree() != tau.degree())
    throw DegreeMismatch("n_fixed: degrees " +
                         std::to_string(sigma.degree()) + " and " +
                         std::to_string(tau.degree()));
  // sigma*tau^-1 fixes x = tau(y) exactly when sigma(y) = tau(y).
  const int n = sigma.degree();
  int count = 0;
  for (int y = 1; y <= n; ++y) count += (sigma(y) == tau(y));
  return count;
}

std::string CycleType::str() const {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts[i]);
  }
  return out;
}

CycleType cycle_type(const Permutation& sigma) {
  const int n = sigma.degree();
  unsigned visited = 0;
  std::vector<int> parts;
  for (int i = 1; i <= n; ++i) {
    if (visited & (1u << (i - 1))) continue;
    int len = 0;
    int j = i;
    while (!(visited & (1u << (j - 1)))) {
      visited |= 1u << (j - 1);
      j = sigma(j);
      ++len;
    }
    parts.push_back(len);
  }
  std::sort(parts.begin(), parts.end(), std::greater<int>());
  return CycleType{std::move(parts)};
}

void for_each_permutation(int n,
                          const std::function<void(const Permutation&)>& fn) {
  check_degree(n);
  std::array<int, kMaxDegree> images;
  std::iota(images.begin(), images.begin() + n, 1);
  do {
    fn(Permutation::from_images(std::span<const int>(images.data(), n)));
  } while (std::next_permutation(images.begin(), images.begin() + n));
}

std::vector<Permutation> all_permutations(int n) {
  check_degree(n);
  if (n > 8)
    throw ResourceLimit("refusing to materialize " + std::to_string(n) +
                            "! permutations; use for_each_permutation",
                        "--allow-long");
  std::vector<Permutation> out;
  out.reserve(factorial(n));
  for_each_permutation(n, [&](const Permutation& p) { out.push_back(p); });
  return out;
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::uint64_t count_derangements(int n) {
  if (n < 1) throw Error("count_derangements: n must be >= 1");
  // D_n = (n-1)(D_{n-1} + D_{n-2}); cross-checked against brute force in tests.
  std::uint64_t prev2 = 1, prev1 = 0;  // D_0, D_1
  if (n == 1) return 0;
  std::uint64_t d = 0;
  for (int k = 2; k <= n; ++k) {
    d = static_cast<std::uint64_t>(k - 1) * (prev1 + prev2);
    prev2 = prev1;
    prev1 = d;
  }
  return d;
}

std::uint64_t lex_rank(const Permutation& sigma) {
  const int n = sigma.degree();
  std::uint64_t rank = 0;
  for (int i = 1; i <= n; ++i) {
    int smaller_later = 0;
    for (int j = i + 1; j <= n; ++j) smaller_later += (sigma(j) < sigma(i));
    rank += static_cast<std::uint64_t>(smaller_later) * factorial(n - i);
  }
  return rank;
}

Permutation lex_unrank(int n, std::uint64_t rank) {
  check_degree(n);
  if (rank >= factorial(n))
    throw Error("lex_unrank: rank " + std::to_string(rank) + " >= " +
                std::to_string(n) + "!");
  std::vector<int> pool(static_cast<size_t>(n));
  std::iota(pool.begin(), pool.end(), 1);
  std::array<int, kMaxDegree> images;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t f = factorial(n - 1 - i);
    const auto idx = static_cast<size_t>(rank / f);
    rank %= f;
    images[i] = pool[idx];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return Permutation::from_images(std::span<const int>(images.data(), n));
}

std::string format_permutation_list(std::span<const Permutation> perms) {
  std::string out;
  for (size_t i = 0; i < perms.size(); ++i) {
    if (i) out += '|';
    out += perms[i].str();
  }
  return out;
}

std::vector<Permutation> parse_permutation_list(std::string_view line) {
  std::vector<Permutation> out;
  size_t start = 0;
  while (start <= line.size()) {
    const size_t bar = line.find('|', start);
    const std::string_view piece =
        line.substr(start, bar == std::string_view::npos ? line.size() - start
                                                         : bar - start);
    out.push_back(Permutation::parse(piece));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Permutation& sigma) {
  return os << sigma.str();
}

}  // namespace derange
