#include "itx/behavior.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace itx {

Behavior::Behavior(InteractionSystem system, Value state, Value seed, Step step)
    : system_(std::make_shared<const InteractionSystem>(std::move(system))),
      state_(std::move(state)),
      seed_(std::move(seed)),
      step_(std::move(step)) {}

Behavior::Behavior(std::shared_ptr<const InteractionSystem> system, Value state,
                   Value seed, Step step)
    : system_(std::move(system)),
      state_(std::move(state)),
      seed_(std::move(seed)),
      step_(std::move(step)) {}

Unfolding Behavior::unfold() const {
  SemStep<Value> s = step_(state_, seed_);
  auto system = system_;
  Value state = state_;
  Value action = s.action;
  auto then = s.then;
  auto step = step_;
  return Unfolding{
      action, [system, state, action, then, step](const Value& d) -> Behavior {
        return Behavior(system, system->next(state, action, d), then(d), step);
      }};
}

Behavior anamorphism(InteractionSystem system, Value state, Behavior::Step step,
                     Value seed) {
  return Behavior(std::move(system), std::move(state), std::move(seed),
                  std::move(step));
}

namespace {

TruncTree truncate_at(const Behavior& b, std::size_t depth,
                      const Budget& budget, std::vector<std::string>& path) {
  auto where = [&path]() -> std::string {
    if (path.empty()) return "root";
    std::string out = "root";
    for (const std::string& p : path) out += "/" + p;
    return out;
  };
  TruncTree node;
  node.state = b.state().encode(budget);
  if (depth == 0) {
    node.truncated = true;
    return node;
  }
  Unfolding u = b.unfold();
  Bytes action_enc;
  try {
    action_enc = u.action.encode(budget);
  } catch (const Error& e) {
    throw UnavailableError("action at " + where() +
                           " cannot be encoded: " + e.what());
  }
  Enumeration responses = b.system().responses(b.state(), u.action);
  if (!responses.available())
    throw UnavailableError("response enumeration unavailable at " + where() +
                           ": " + responses.note());
  std::vector<std::pair<Bytes, TruncTree>> children;
  for (std::size_t k = 0; k < budget.per_axis; ++k) {
    std::optional<Value> d = responses.nth(k);
    if (!d.has_value()) break;
    Bytes d_enc = d->encode(budget);
    path.push_back(decode_text(d_enc));
    children.emplace_back(d_enc, truncate_at(u.next(*d), depth - 1, budget, path));
    path.pop_back();
  }
  if (responses.nth(budget.per_axis).has_value()) node.truncated = true;
  node.branches.emplace_back(std::move(action_enc), std::move(children));
  return node;
}

}  // namespace

TruncTree truncate(const Behavior& behavior, std::size_t depth,
                   const Budget& budget) {
  std::vector<std::string> path;
  return truncate_at(behavior, depth, budget, path);
}

nlohmann::json trunc_to_json(const TruncTree& tree) {
  nlohmann::json branches = nlohmann::json::array();
  for (const auto& [action, children] : tree.branches) {
    nlohmann::json kids = nlohmann::json::array();
    for (const auto& [response, child] : children)
      kids.push_back({to_hex(response), trunc_to_json(child)});
    branches.push_back({to_hex(action), kids});
  }
  return nlohmann::json{{"i", to_hex(tree.state)},
                        {"truncated", tree.truncated},
                        {"br", branches}};
}

namespace {

void text_at(const TruncTree& tree, std::size_t indent, std::string& out) {
  std::string pad(indent * 2, ' ');
  out += pad + "@ " + decode_text(tree.state);
  if (tree.truncated) out += " …";
  out += "\n";
  for (const auto& [action, children] : tree.branches) {
    out += pad + "! " + decode_text(action) + "\n";
    for (const auto& [response, child] : children) {
      out += pad + "  ? " + decode_text(response) + "\n";
      text_at(child, indent + 2, out);
    }
  }
}

}  // namespace

std::string trunc_to_text(const TruncTree& tree) {
  std::string out;
  text_at(tree, 0, out);
  return out;
}

namespace {

bool bisim_at(const Behavior& lhs, const Behavior& rhs, std::size_t depth,
              const Budget& budget, std::vector<std::string>& notes) {
  if (depth == 0) return true;
  Unfolding ul = lhs.unfold();
  Unfolding ur = rhs.unfold();
  if (!approx_equal(ul.action, ur.action, budget, &notes)) return false;
  Enumeration responses = lhs.system().responses(lhs.state(), ul.action);
  if (!responses.available())
    throw UnavailableError("bisimilarity needs the response enumeration: " +
                           responses.note());
  for (std::size_t k = 0; k < budget.per_axis; ++k) {
    std::optional<Value> d = responses.nth(k);
    if (!d.has_value()) return true;
    if (!bisim_at(ul.next(*d), ur.next(*d), depth - 1, budget, notes))
      return false;
  }
  if (responses.nth(budget.per_axis).has_value())
    notes.push_back("response axis cut at " + std::to_string(budget.per_axis) +
                    " elements");
  return true;
}

}  // namespace

BisimResult bisim_depth(const Behavior& lhs, const Behavior& rhs,
                        std::size_t depth, const Budget& budget) {
  BisimResult result;
  if (!approx_equal(lhs.state(), rhs.state(), budget, &result.notes)) {
    result.related = false;
    result.notes.push_back("root states differ");
    return result;
  }
  result.related = bisim_at(lhs, rhs, depth, budget, result.notes);
  std::sort(result.notes.begin(), result.notes.end());
  result.notes.erase(std::unique(result.notes.begin(), result.notes.end()),
                     result.notes.end());
  return result;
}

std::size_t ProbeLog::count() const {
  std::lock_guard<std::mutex> lock(state_->mu);
  return state_->entries.size();
}

std::vector<ProbeEntry> ProbeLog::entries() const {
  std::lock_guard<std::mutex> lock(state_->mu);
  return state_->entries;
}

bool ProbeLog::is_chain() const {
  std::vector<ProbeEntry> all = entries();
  std::set<std::uint64_t> seen;
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (!seen.insert(all[k].node).second) return false;  // stepped twice
    if (k > 0 && all[k].parent != all[k - 1].node) return false;
  }
  return true;
}

std::vector<std::size_t> ProbeLog::depth_histogram() const {
  std::vector<std::size_t> histogram;
  for (const ProbeEntry& e : entries()) {
    if (histogram.size() <= e.depth) histogram.resize(e.depth + 1, 0);
    ++histogram[static_cast<std::size_t>(e.depth)];
  }
  return histogram;
}

namespace {

/// Seed payload of an instrumented behavior: the wrapped node plus its tag.
struct ProbedSeed {
  Behavior inner;
  std::uint64_t id;
  std::uint64_t parent;
  std::uint64_t depth;
};

}  // namespace

std::optional<std::vector<Value>> take_stream(const Behavior& b, std::size_t n) {
  Behavior current = b;
  std::vector<Value> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& base = current.system().dual_base;
    if (base == nullptr) return std::nullopt;
    Enumeration actions = base->actions(current.state());
    if (!actions.available()) return std::nullopt;
    std::optional<Value> only = actions.nth(0);
    if (!only.has_value() || actions.nth(1).has_value()) return std::nullopt;
    Unfolding u = current.unfold();
    out.push_back(u.action.apply(*only));
    current = u.next(*only);
  }
  return out;
}

Behavior probed(const Behavior& behavior, ProbeLog log) {
  auto state = log.state_;
  Behavior::Step step = [state](const Value&, const Value& seed) -> SemStep<Value> {
    const ProbedSeed& tag = seed.unbox<ProbedSeed>();
    {
      std::lock_guard<std::mutex> lock(state->mu);
      state->entries.push_back(ProbeEntry{tag.id, tag.parent, tag.depth});
    }
    Unfolding u = tag.inner.unfold();
    std::uint64_t id = tag.id;
    std::uint64_t depth = tag.depth;
    auto next = u.next;
    auto st = state;
    return SemStep<Value>{u.action, [st, next, id, depth](const Value& d) -> Value {
                            std::uint64_t child =
                                st->next_id.fetch_add(1, std::memory_order_relaxed);
                            return Value::boxed(
                                ProbedSeed{next(d), child, id, depth + 1});
                          }};
  };
  std::uint64_t root = log.state_->next_id.fetch_add(1, std::memory_order_relaxed);
  return Behavior(behavior.system(), behavior.state(),
                  Value::boxed(ProbedSeed{behavior, root, root, 0}), step);
}

}  // namespace itx
