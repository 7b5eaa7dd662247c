#ifndef ITX_ENUMERATION_HPP
#define ITX_ENUMERATION_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "itx/value.hpp"

namespace itx {

/// A lazily produced, ordered, prefix-consistent sequence of Values.
///
/// An enumeration is an optional capability: `available()` may be false (with
/// a reason), in which case element access throws UnavailableError. The
/// `finite()` flag is advisory: nullopt means unknown. Access is by pure
/// index, so taking n elements and later m >= n elements always agree on the
/// shared prefix.
class Enumeration {
 public:
  /// Unavailable enumeration carrying the reason.
  static Enumeration unavailable(std::string why);

  /// Finite enumeration of the given elements, in order.
  static Enumeration of(std::vector<Value> items);

  /// 0, 1, 2, ... as nat values.
  static Enumeration naturals();

  /// General indexed enumeration; `nth` must be pure and prefix-consistent
  /// (nullopt marks the end and must stay the end for larger indices).
  static Enumeration from_nth(
      std::function<std::optional<Value>(std::uint64_t)> nth,
      std::optional<bool> finite);

  /// Stage-wise enumeration with internal (thread-safe) memoisation: stage k
  /// produces a batch of new elements; nullopt means no further stages. Used
  /// for sequences whose prefixes are expensive to recompute (tree spaces).
  static Enumeration staged(
      std::function<std::optional<std::vector<Value>>(std::size_t)> stage);

  /// Defers construction until first use (thread-safe, computed once).
  static Enumeration deferred(std::function<Enumeration()> make);

  bool available() const;
  std::optional<bool> finite() const;
  const std::string& note() const;

  /// Element access; throws UnavailableError when not available.
  std::optional<Value> nth(std::uint64_t index) const;

  /// First min(n, size) elements.
  std::vector<Value> take(std::size_t n) const;

  /// All elements, required to end within `limit`; throws BudgetError when
  /// more remain and UnavailableError when not available.
  std::vector<Value> exhaust(std::size_t limit) const;

  /// True when the enumeration ends within `limit` elements and they match
  /// the budgeted prefix semantics; size reported through `out`.
  bool bounded_size(std::size_t limit, std::size_t& out) const;

  Enumeration map(std::function<Value(const Value&)> f) const;

  /// Dependent sum, lexicographic: all (b, fiber(b)) pairs, base-major.
  /// The pairs are emitted as Value::pair(base, fiber_element).
  static Enumeration sigma(Enumeration base,
                           std::function<Enumeration(const Value&)> fiber);

  /// Dependent function space, fully tabulated: the domain and every
  /// codomain must end within `per_axis` elements, otherwise the result is
  /// unavailable (with the reason). Elements are fn_table values keyed by the
  /// domain elements.
  static Enumeration fn_space(Enumeration domain,
                              std::function<Enumeration(const Value&)> codomain,
                              std::size_t per_axis);

 private:
  struct Impl;
  explicit Enumeration(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

}  // namespace itx

#endif  // ITX_ENUMERATION_HPP
