#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace azeta {

/// f(i) for i in [lo, hi), results in index order whatever the job count.
/// Workers pull indices from a shared counter; the first exception is rethrown.
template <class F>
auto parallel_map(long lo, long hi, F&& f, unsigned jobs) -> std::vector<decltype(f(lo))> {
  using T = decltype(f(lo));
  std::vector<T> out;
  if (hi <= lo) return out;
  const long count = hi - lo;
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (jobs == 1) {
    out.reserve(static_cast<std::size_t>(count));
    for (long i = lo; i < hi; ++i) out.push_back(f(i));
    return out;
  }
  std::vector<std::optional<T>> slots(static_cast<std::size_t>(count));
  std::atomic<long> next{lo};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (long i = next++; i < hi; i = next++) {
      try {
        slots[static_cast<std::size_t>(i - lo)].emplace(f(i));
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        next = hi;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace azeta
