#ifndef ITX_WFTREE_HPP
#define ITX_WFTREE_HPP

#include <functional>
#include <string>
#include <vector>

#include "itx/behavior.hpp"
#include "itx/interaction.hpp"

#include "json.hpp"

namespace itx {

/// Well-founded request trees over a system, as Values:
///   leaf  = left(payload)
///   node  = right(pair(action, children)) with children applicable on the
///           responses to that action.
/// Leaves carry a payload (unit for plain requests). Paths through a tree are
/// Values too: done = unit, step = pair(response, rest).
Value wft_leaf(Value payload);
Value wft_node(const InteractionSystem& w, const Value& state, Value action,
               std::function<Value(const Value& response)> children);
bool wft_is_leaf(const Value& tree);
Value wft_payload(const Value& tree);
Value wft_action(const Value& tree);
Value wft_child(const Value& tree, const Value& response);

Value path_done();
Value path_step(Value response, Value rest);
bool path_is_done(const Value& path);

/// Single-request tree: one node whose children are all leaves.
Value wft_request(const InteractionSystem& w, const Value& state, Value action);

/// The free construction on a system: states unchanged, actions are request
/// trees, responses are complete paths, the endpoint map walks the path.
/// Tree enumeration proceeds stage-wise by depth (deduplicated by encoding)
/// and is unavailable whenever the underlying enumerations are.
InteractionSystem star(const InteractionSystem& w,
                       std::size_t per_axis = kDefaultBudget);

/// Endpoint of a path through a tree.
Value star_next(const InteractionSystem& w, const Value& state,
                const Value& tree, const Value& path);

/// Path enumeration for a fixed tree (lexicographic, leaf count when finite).
Enumeration star_paths(const InteractionSystem& w, const Value& state,
                       const Value& tree);

/// Structural recursion over a request tree.
template <typename Y>
Y fm_fold(const InteractionSystem& w, const Value& state, const Value& tree,
          const std::function<Y(const Value& state, const Value& payload)>& leaf,
          const std::function<Y(const Value& state, const SemStep<Y>& step)>& node) {
  if (wft_is_leaf(tree)) return leaf(state, wft_payload(tree));
  Value action = wft_action(tree);
  SemStep<Y> step;
  step.action = action;
  step.then = [&w, state, action, tree, &leaf, &node](const Value& d) -> Y {
    return fm_fold<Y>(w, w.next(state, action, d), wft_child(tree, d), leaf, node);
  };
  return node(state, step);
}

/// Unit and one-step constructors.
Value fm_unit(Value payload);
Value fm_step(const InteractionSystem& w, const Value& state,
              const SemStep<Value>& step);

/// Flattens a tree-of-trees (a request tree over star(w) whose node labels
/// are themselves request trees) into one request tree, and translates paths
/// in both directions.
Value graft(const InteractionSystem& w, const Value& state, const Value& tree2);
Value graft_path_forward(const InteractionSystem& w, const Value& state,
                         const Value& tree2, const Value& flat_path);
Value graft_path_backward(const InteractionSystem& w, const Value& state,
                          const Value& tree2, const Value& nested_path);

/// Runs a request tree against a behavior over dual(w): every node queries
/// the behavior's choice function with the node's action and descends along
/// the answered response. Returns the leaf payload, the complete path, and
/// the residual behavior; the endpoint of the path is the residual's state.
struct EatResult {
  Value payload;
  Value path;
  Behavior residual;
};

EatResult eat(const InteractionSystem& w, const Value& state, const Value& tree,
              const Behavior& input);

/// JSON forms (children listed over the budgeted response enumeration).
nlohmann::json wft_to_json(const InteractionSystem& w, const Value& state,
                           const Value& tree, const Budget& budget = Budget());
Value wft_from_json(const nlohmann::json& j);

}  // namespace itx

#endif  // ITX_WFTREE_HPP
