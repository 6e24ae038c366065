#pragma once

#include <cstddef>
#include <deque>
#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <vector>

#include "azeta/exact.hpp"

namespace azeta {

/// Bernoulli numbers with B_1 = -1/2, computed from
/// B_m = -1/(m+1) * sum_{k<m} C(m+1,k) B_k and memoized.
///
/// Thread-safe: readers share a lock, extension is exclusive. Returned
/// references stay valid for the table's lifetime (deque storage).
class BernoulliTable {
 public:
  BernoulliTable();

  /// Loads `cache_file` if present; newly computed values are written back
  /// atomically (temp file + rename).
  explicit BernoulliTable(std::filesystem::path cache_file);

  const Rational& get(std::size_t j);
  void ensure(std::size_t j);
  std::size_t size() const;

  /// Persist the current table (no-op without a cache file).
  void flush() const;

  /// Process-wide table; cache directory taken from AZETA_CACHE_DIR if set.
  static BernoulliTable& global();

 private:
  void extend_locked(std::size_t j);
  void load_cache();
  void save_locked() const;

  mutable std::shared_mutex mu_;
  std::deque<Rational> values_;
  std::vector<Integer> scaled_;
  Integer common_den_ = 1;
  std::optional<std::filesystem::path> cache_;
  std::size_t persisted_ = 0;
};

Rational bernoulli(std::size_t j);

}  // namespace azeta
