#include "derange/bitgraph.hpp"

#include <cstring>
#include <map>
#include <memory>
#include <mutex>

#include "derange/errors.hpp"

namespace derange {

namespace {

BitMatrix build_adjacency(const std::vector<Permutation>& perms) {
  const std::size_t size = perms.size();
  BitMatrix adj(size, size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 1; j < size; ++j)
      if (n_fixed(perms[i], perms[j]) == 0) {
        adj.set(i, j);
        adj.set(j, i);
      }
  return adj;
}

std::string adjacency_key(int n) {
  return "adjacency-n" + std::to_string(n) + "-v" +
         std::to_string(kCacheFormatVersion);
}

}  // namespace

const DerangementGraph& DerangementGraph::get(int n,
                                              const CacheOptions& cache) {
  if (n < 1 || n > 6)
    throw Error("derangement graph materialized only for n <= 6");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<DerangementGraph>> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto it = memo.find(n);
  if (it != memo.end()) return *it->second;

  auto graph = std::make_unique<DerangementGraph>();
  graph->n = n;
  graph->perms = all_permutations(n);
  const std::size_t size = graph->perms.size();

  bool loaded = false;
  if (n == 6) {
    // The 720x720 bit matrix is the one worth keeping on disk.
    if (auto payload = cache_load(cache, adjacency_key(n))) {
      BitMatrix adj(size, size);
      if (payload->size() == adj.bits.size() * sizeof(std::uint64_t)) {
        std::memcpy(adj.bits.data(), payload->data(), payload->size());
        graph->adj = std::move(adj);
        loaded = true;
      }
    }
  }
  if (!loaded) {
    graph->adj = build_adjacency(graph->perms);
    if (n == 6)
      cache_store(cache, adjacency_key(n),
                  std::span<const std::byte>(
                      reinterpret_cast<const std::byte*>(graph->adj.bits.data()),
                      graph->adj.bits.size() * sizeof(std::uint64_t)));
  }

  auto& slot = memo[n];
  slot = std::move(graph);
  return *slot;
}

}  // namespace derange
