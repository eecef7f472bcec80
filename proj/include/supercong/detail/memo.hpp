// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>

namespace supercong::detail {

/// Thread-safe memo of immutable values. Two threads racing on the same key
/// may both compute it; the first insert wins. Clears itself when full.
template <class Key, class Value>
class Memo {
 public:
  explicit Memo(std::size_t capacity = 512) : capacity_(capacity) {}

  template <class Make>
  std::shared_ptr<const Value> get(const Key& key, Make&& make) {
    {
      std::lock_guard lock(mu_);
      if (auto it = map_.find(key); it != map_.end()) return it->second;
    }
    auto value = std::make_shared<const Value>(make());
    std::lock_guard lock(mu_);
    if (map_.size() >= capacity_) map_.clear();
    return map_.emplace(key, std::move(value)).first->second;
  }

 private:
  std::size_t capacity_;
  std::mutex mu_;
  std::map<Key, std::shared_ptr<const Value>> map_;
};

}  // namespace supercong::detail
