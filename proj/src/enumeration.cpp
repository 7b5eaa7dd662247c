#include "itx/enumeration.hpp"

#include <mutex>

namespace itx {

struct Enumeration::Impl {
  bool available = true;
  std::optional<bool> finite;
  std::string note;
  std::function<std::optional<Value>(std::uint64_t)> nth;
};

Enumeration::Enumeration(std::shared_ptr<const Impl> impl)
    : impl_(std::move(impl)) {}

Enumeration Enumeration::unavailable(std::string why) {
  auto impl = std::make_shared<Impl>();
  impl->available = false;
  impl->note = std::move(why);
  return Enumeration(std::move(impl));
}

Enumeration Enumeration::of(std::vector<Value> items) {
  auto impl = std::make_shared<Impl>();
  impl->finite = true;
  auto data = std::make_shared<std::vector<Value>>(std::move(items));
  impl->nth = [data](std::uint64_t k) -> std::optional<Value> {
    if (k >= data->size()) return std::nullopt;
    return (*data)[static_cast<std::size_t>(k)];
  };
  return Enumeration(std::move(impl));
}

Enumeration Enumeration::naturals() {
  auto impl = std::make_shared<Impl>();
  impl->finite = false;
  impl->nth = [](std::uint64_t k) -> std::optional<Value> {
    return Value::nat(k);
  };
  return Enumeration(std::move(impl));
}

Enumeration Enumeration::from_nth(
    std::function<std::optional<Value>(std::uint64_t)> nth,
    std::optional<bool> finite) {
  auto impl = std::make_shared<Impl>();
  impl->finite = finite;
  impl->nth = std::move(nth);
  return Enumeration(std::move(impl));
}

Enumeration Enumeration::staged(
    std::function<std::optional<std::vector<Value>>(std::size_t)> stage) {
  struct Cache {
    std::mutex mu;
    std::vector<Value> flat;
    std::size_t next_stage = 0;
    bool done = false;
  };
  auto cache = std::make_shared<Cache>();
  auto impl = std::make_shared<Impl>();
  impl->nth = [cache, stage](std::uint64_t k) -> std::optional<Value> {
    std::lock_guard<std::mutex> lock(cache->mu);
    while (!cache->done && cache->flat.size() <= k) {
      std::optional<std::vector<Value>> batch = stage(cache->next_stage++);
      if (!batch.has_value()) {
        cache->done = true;
        break;
      }
      for (Value& v : *batch) cache->flat.push_back(std::move(v));
    }
    if (k >= cache->flat.size()) return std::nullopt;
    return cache->flat[static_cast<std::size_t>(k)];
  };
  return Enumeration(std::move(impl));
}

Enumeration Enumeration::deferred(std::function<Enumeration()> make) {
  struct Cell {
    std::mutex mu;
    std::optional<Enumeration> value;
  };
  auto cell = std::make_shared<Cell>();
  auto force = [cell, make]() -> const Enumeration& {
    std::lock_guard<std::mutex> lock(cell->mu);
    if (!cell->value.has_value()) cell->value = make();
    return *cell->value;
  };
  auto impl = std::make_shared<Impl>();
  impl->nth = [force](std::uint64_t k) -> std::optional<Value> {
    const Enumeration& e = force();
    if (!e.available()) throw UnavailableError(e.note());
    return e.nth(k);
  };
  return Enumeration(std::move(impl));
}

bool Enumeration::available() const { return impl_->available; }

std::optional<bool> Enumeration::finite() const { return impl_->finite; }

const std::string& Enumeration::note() const { return impl_->note; }

std::optional<Value> Enumeration::nth(std::uint64_t index) const {
  if (!impl_->available)
    throw UnavailableError("enumeration unavailable: " + impl_->note);
  return impl_->nth(index);
}

std::vector<Value> Enumeration::take(std::size_t n) const {
  std::vector<Value> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::optional<Value> v = nth(k);
    if (!v.has_value()) break;
    out.push_back(std::move(*v));
  }
  return out;
}

std::vector<Value> Enumeration::exhaust(std::size_t limit) const {
  std::vector<Value> out = take(limit);
  if (out.size() == limit && nth(limit).has_value())
    throw BudgetError("enumeration does not end within " +
                      std::to_string(limit) + " elements");
  return out;
}

bool Enumeration::bounded_size(std::size_t limit, std::size_t& out) const {
  std::vector<Value> items = take(limit + 1);
  if (items.size() > limit) return false;
  out = items.size();
  return true;
}

Enumeration Enumeration::map(std::function<Value(const Value&)> f) const {
  Enumeration self = *this;
  if (!self.available()) return self;
  auto impl = std::make_shared<Impl>();
  impl->finite = self.finite();
  impl->nth = [self, f](std::uint64_t k) -> std::optional<Value> {
    std::optional<Value> v = self.nth(k);
    if (!v.has_value()) return std::nullopt;
    return f(*v);
  };
  return Enumeration(std::move(impl));
}

Enumeration Enumeration::sigma(Enumeration base,
                               std::function<Enumeration(const Value&)> fiber) {
  if (!base.available()) return base;
  auto impl = std::make_shared<Impl>();
  // Lexicographic base-major order; scanning keeps nth pure and
  // prefix-consistent even when fibers differ in (possibly infinite) size.
  impl->nth = [base, fiber](std::uint64_t target) -> std::optional<Value> {
    std::uint64_t seen = 0;
    for (std::uint64_t bi = 0;; ++bi) {
      std::optional<Value> b = base.nth(bi);
      if (!b.has_value()) return std::nullopt;
      Enumeration f = fiber(*b);
      if (!f.available())
        throw UnavailableError("sigma fiber unavailable: " + f.note());
      for (std::uint64_t fi = 0;; ++fi) {
        std::optional<Value> x = f.nth(fi);
        if (!x.has_value()) break;
        if (seen == target) return Value::pair(*b, *x);
        ++seen;
        // A fiber that never ends absorbs the rest of the order.
      }
    }
  };
  return Enumeration(std::move(impl));
}

Enumeration Enumeration::fn_space(
    Enumeration domain, std::function<Enumeration(const Value&)> codomain,
    std::size_t per_axis) {
  if (!domain.available())
    return Enumeration::unavailable("function space over unavailable domain: " +
                                    domain.note());
  std::vector<Value> keys;
  try {
    keys = domain.exhaust(per_axis);
  } catch (const BudgetError&) {
    return Enumeration::unavailable(
        "function space domain does not end within the per-axis budget (" +
        std::to_string(per_axis) + ")");
  }
  std::vector<std::vector<Value>> axes;
  axes.reserve(keys.size());
  for (const Value& k : keys) {
    Enumeration c = codomain(k);
    if (!c.available())
      return Enumeration::unavailable("function space codomain unavailable: " +
                                      c.note());
    try {
      axes.push_back(c.exhaust(per_axis));
    } catch (const BudgetError&) {
      return Enumeration::unavailable(
          "function space codomain does not end within the per-axis budget (" +
          std::to_string(per_axis) + ")");
    }
  }
  auto shared_keys = std::make_shared<std::vector<Value>>(std::move(keys));
  auto shared_axes = std::make_shared<std::vector<std::vector<Value>>>(std::move(axes));
  auto impl = std::make_shared<Impl>();
  impl->finite = true;
  impl->nth = [shared_keys, shared_axes](std::uint64_t index)
      -> std::optional<Value> {
    std::uint64_t rest = index;
    std::vector<std::pair<Value, Value>> entries;
    entries.reserve(shared_keys->size());
    for (std::size_t k = 0; k < shared_keys->size(); ++k) {
      const std::vector<Value>& axis = (*shared_axes)[k];
      if (axis.empty()) return std::nullopt;  // empty codomain: no functions
      std::uint64_t digit = rest % axis.size();
      rest /= axis.size();
      entries.emplace_back((*shared_keys)[k], axis[static_cast<std::size_t>(digit)]);
    }
    if (rest != 0) return std::nullopt;
    return Value::fn_table(std::move(entries));
  };
  return Enumeration(std::move(impl));
}

}  // namespace itx
