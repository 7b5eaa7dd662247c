#ifndef ITX_CACHE_HPP
#define ITX_CACHE_HPP

#include <deque>
#include <map>
#include <optional>
#include <utility>

#include "itx/value.hpp"

namespace itx {

/// Outcome cache keyed by a probe value's canonical encoding, with pointer
/// identity as the fallback for values that cannot be encoded. Shared between
/// an action function and its continuation so each probe queries the
/// underlying behavior exactly once per produced step.
template <typename T>
class KeyedCache {
 public:
  template <typename F>
  T get(const Value& key, F&& make) {
    std::optional<Bytes> enc;
    try {
      enc = key.encode();
    } catch (const Error&) {
      enc = std::nullopt;
    }
    if (enc.has_value()) {
      auto it = by_bytes_.find(*enc);
      if (it != by_bytes_.end()) return it->second;
      T made = make();
      by_bytes_.emplace(std::move(*enc), made);
      return made;
    }
    for (const auto& [k, v] : by_node_)
      if (same_node(k, key)) return v;
    T made = make();
    by_node_.emplace_back(key, made);
    return made;
  }

 private:
  std::map<Bytes, T> by_bytes_;
  std::deque<std::pair<Value, T>> by_node_;
};

}  // namespace itx

#endif  // ITX_CACHE_HPP
