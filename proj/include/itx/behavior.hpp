#ifndef ITX_BEHAVIOR_HPP
#define ITX_BEHAVIOR_HPP

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "itx/interaction.hpp"

#include "json.hpp"

namespace itx {

class Behavior;

/// One unfolding of a behavior: the action offered at the current state and
/// the residual behavior per response.
struct Unfolding {
  Value action;
  std::function<Behavior(const Value& response)> next;
};

/// A seeded coalgebra: a system, a current state, a seed, and a pure step
/// producing one action plus the seed for each response. Equal (state, seed)
/// pairs must step equally; re-stepping is always permitted.
class Behavior {
 public:
  using Step =
      std::function<SemStep<Value>(const Value& state, const Value& seed)>;

  Behavior(InteractionSystem system, Value state, Value seed, Step step);
  Behavior(std::shared_ptr<const InteractionSystem> system, Value state,
           Value seed, Step step);

  const InteractionSystem& system() const { return *system_; }
  const Value& state() const { return state_; }
  const Value& seed() const { return seed_; }

  /// Runs the step once and packages the residuals (no caching).
  Unfolding unfold() const;

 private:
  std::shared_ptr<const InteractionSystem> system_;
  Value state_;
  Value seed_;
  Step step_;
};

/// Introduction form: the behavior unfolding a coalgebra from a seed.
Behavior anamorphism(InteractionSystem system, Value state, Behavior::Step step,
                     Value seed);

/// When `b` runs over a dual system whose base offers exactly one action at
/// every visited state, plays that action `n` times and returns the answered
/// responses. Returns nullopt as soon as the shape fails (no dual base, or
/// more than one base action at some state).
std::optional<std::vector<Value>> take_stream(const Behavior& b, std::size_t n);

/// Depth-bounded unfolding of a behavior into explicit branches. Children
/// follow the response enumeration; at most `budget.per_axis` of them are
/// expanded (more marks the node truncated, like the depth bound does).
/// Unavailable enumerations or unencodable actions raise errors naming the
/// offending node by response path.
struct TruncTree {
  Bytes state;
  bool truncated = false;
  std::vector<std::pair<Bytes, std::vector<std::pair<Bytes, TruncTree>>>>
      branches;
};

TruncTree truncate(const Behavior& behavior, std::size_t depth,
                   const Budget& budget = Budget());

nlohmann::json trunc_to_json(const TruncTree& tree);
std::string trunc_to_text(const TruncTree& tree);

/// Result of a bounded bisimilarity check. `related` is the depth/budget
/// bounded verdict; `notes` records every axis that had to be cut at the
/// budget (reported, never folded into the verdict).
struct BisimResult {
  bool related = false;
  std::vector<std::string> notes;
  explicit operator bool() const { return related; }
};

/// Depth-bounded bisimilarity: actions must agree at every node (function
/// actions compared extensionally over budgeted domains) and the check
/// recurses through each enumerated response. Root states must agree.
BisimResult bisim_depth(const Behavior& lhs, const Behavior& rhs,
                        std::size_t depth, const Budget& budget = Budget());

/// Default depths: chains observe far, trees branch exponentially.
inline constexpr std::size_t kStreamBisimDepth = 50;
inline constexpr std::size_t kTreeBisimDepth = 12;

/// Query instrumentation. Wrapping a behavior tags every node with an id and
/// records one entry per step invocation; continuations allocate child ids.
struct ProbeEntry {
  std::uint64_t node = 0;
  std::uint64_t parent = 0;  // == node for the root
  std::uint64_t depth = 0;
};

class ProbeLog {
 public:
  ProbeLog() : state_(std::make_shared<State>()) {}
  std::size_t count() const;
  std::vector<ProbeEntry> entries() const;
  /// True when the recorded steps form one downward chain: every step after
  /// the first acts on a child of the previously stepped node, each node
  /// stepped at most once.
  bool is_chain() const;
  /// Number of recorded steps at each depth (index = depth).
  std::vector<std::size_t> depth_histogram() const;

 private:
  struct State {
    mutable std::mutex mu;
    std::vector<ProbeEntry> entries;
    std::atomic<std::uint64_t> next_id{1};
  };
  std::shared_ptr<State> state_;
  friend Behavior probed(const Behavior& behavior, ProbeLog log);
};

Behavior probed(const Behavior& behavior, ProbeLog log);

}  // namespace itx

#endif  // ITX_BEHAVIOR_HPP
