#ifndef DERANGE_PARALLEL_HPP
#define DERANGE_PARALLEL_HPP

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

namespace derange {

// 0 means "use all hardware threads".
inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Runs fn(i) for i in [0, count) across workers and hands each result to
// consume(i, result) strictly in index order.  Output is therefore identical
// for every thread count.  consume runs under a lock; keep it light.
template <class Result, class Fn, class Consume>
void parallel_for_ordered(std::uint64_t count, unsigned threads, Fn&& fn,
                          Consume&& consume) {
  threads = resolve_threads(threads);
  if (threads <= 1 || count <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) consume(i, fn(i));
    return;
  }

  std::atomic<std::uint64_t> next{0};
  std::mutex mu;
  std::map<std::uint64_t, Result> pending;
  std::uint64_t emit = 0;
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        Result r = fn(i);
        std::lock_guard<std::mutex> lock(mu);
        if (failure) return;
        pending.emplace(i, std::move(r));
        while (!pending.empty() && pending.begin()->first == emit) {
          consume(emit, std::move(pending.begin()->second));
          pending.erase(pending.begin());
          ++emit;
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace derange

#endif
