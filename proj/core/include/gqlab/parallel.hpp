#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace gqlab {

// A bounded computation ran out of its element or tuple budget.  Callers that
// can degrade (sampling instead of exhaustion) should do so before this is
// thrown; reaching it is a hard stop with diagnostics in what().
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what, std::size_t budget, std::size_t needed)
      : std::runtime_error(what + " (budget " + std::to_string(budget) +
                           ", needed at least " + std::to_string(needed) + ")"),
        budget_(budget),
        needed_(needed) {}
  std::size_t budget() const { return budget_; }
  std::size_t needed() const { return needed_; }

 private:
  std::size_t budget_, needed_;
};

inline unsigned default_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n ? n : 1;
}

// Splits [0, n) into contiguous chunks, one worker per chunk.  body(begin, end,
// worker_index) must only write to per-worker state; merging is the caller's
// job so that results stay independent of the thread count.
template <typename Body>
void parallel_chunks(std::size_t n, unsigned threads, Body&& body) {
  if (threads <= 1 || n < 2048) {
    body(std::size_t(0), n, 0u);
    return;
  }
  threads = std::min<std::size_t>(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    std::size_t b = std::min(n, std::size_t(t) * chunk);
    std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&body, b, e, t] { body(b, e, t); });
  }
  for (auto& th : pool) th.join();
}

// Counterexample search helper: each worker records the smallest violating
// index it sees, the merge keeps the global minimum.  The winning witness is
// therefore the same whatever the thread count.
struct MinWitness {
  std::size_t idx = SIZE_MAX;
  bool found() const { return idx != SIZE_MAX; }
  void offer(std::size_t i) { idx = std::min(idx, i); }
  void merge(const MinWitness& o) { idx = std::min(idx, o.idx); }
};

// splitmix64: deterministic stateless stream for sampled checks.  Sample i of
// a run keyed by `seed` is hash(seed, i), so a budget change never reshuffles
// the samples that were already drawn.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline uint64_t sample_at(uint64_t seed, uint64_t i) { return splitmix64(seed ^ (i * 0x9e3779b97f4a7c15ull)); }

}  // namespace gqlab
