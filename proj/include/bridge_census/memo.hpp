#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>

namespace bridge_census {

// Concurrent readers, serialized insertion. The first inserted value for a
// key wins; recursive callers compute outside the lock.
template <typename Key, typename Value>
class MemoTable {
 public:
  std::optional<Value> find(const Key& key) const {
    std::shared_lock lock(mutex_);
    auto it = table_.find(key);
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }

  Value insert(const Key& key, Value value) {
    std::unique_lock lock(mutex_);
    return table_.try_emplace(key, std::move(value)).first->second;
  }

  template <typename Compute>
  Value get_or_compute(const Key& key, Compute&& compute) {
    if (auto hit = find(key)) return *std::move(hit);
    return insert(key, compute());
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return table_.size();
  }

  void clear() {
    std::unique_lock lock(mutex_);
    table_.clear();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::map<Key, Value> table_;
};

}  // namespace bridge_census
