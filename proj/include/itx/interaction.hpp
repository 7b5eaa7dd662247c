#ifndef ITX_INTERACTION_HPP
#define ITX_INTERACTION_HPP

#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "itx/enumeration.hpp"
#include "itx/value.hpp"

namespace itx {

/// A state-indexed command/response protocol: at each state there is a set of
/// actions, per action a set of responses, and per response a next state.
/// Sets are carried as optional enumerations; `next` is total on the valid
/// triples. Systems are immutable and cheap to copy.
struct InteractionSystem {
  std::string name;
  std::function<Enumeration(const Value& state)> actions;
  std::function<Enumeration(const Value& state, const Value& action)> responses;
  std::function<Value(const Value& state, const Value& action,
                      const Value& response)>
      next;
  /// Set by dual(): the system this one is the dual of. Lets generic drivers
  /// recognise behaviors over duals (e.g. stream-shaped rendering).
  std::shared_ptr<const InteractionSystem> dual_base;
};

/// One observed step: an action together with a continuation defined on the
/// responses to that action.
template <typename X>
struct SemStep {
  Value action;
  std::function<X(const Value& response)> then;
};

/// Functoriality of the one-step observation: post-composes the continuation.
template <typename X, typename Y>
SemStep<Y> ext_map(const SemStep<X>& step, std::function<Y(const X&)> g) {
  auto then = step.then;
  return SemStep<Y>{step.action, [then, g](const Value& d) -> Y {
                      X x = then(d);
                      return g(x);
                    }};
}

/// Sequential composition: the composite runs one `w1` step and then one `w2`
/// step. Composite actions are pairs ⟨a1, f⟩ with f mapping each d1 to the
/// follow-up action; responses are pairs ⟨d1, d2⟩.
InteractionSystem compose_is(const InteractionSystem& w1,
                             const InteractionSystem& w2,
                             std::size_t per_axis = kDefaultBudget);

/// Role swap: actions of the dual are choice functions (one response per
/// action of the base), responses are the base's actions.
InteractionSystem dual(const InteractionSystem& w,
                       std::size_t per_axis = kDefaultBudget);

/// Internal hom of two systems over paired states. An action is a pair
/// ⟨f, φ⟩ of an action translator (target action to source action) and a
/// response translator (per target action, source response to target
/// response); a response is a pair ⟨a2, d1⟩; both components step.
InteractionSystem hom(const InteractionSystem& w1, const InteractionSystem& w2,
                      std::size_t per_axis = kDefaultBudget);

/// Paired-state helpers for hom.
Value hom_state(const Value& i1, const Value& i2);

/// Flattens a "step then step" observation into a single composite step
/// (the intensional choice principle, forward direction).
SemStep<Value> ac_forward(const InteractionSystem& w1,
                          const InteractionSystem& w2, const Value& state,
                          const SemStep<SemStep<Value>>& nested);

/// Splits a composite step back into nested steps (backward direction).
SemStep<SemStep<Value>> ac_backward(const InteractionSystem& w1,
                                    const InteractionSystem& w2,
                                    const Value& state,
                                    const SemStep<Value>& flat);

/// Repackages a step over dual(w) as a per-action table a ↦ ⟨d, x⟩
/// (choice-function direction of the same principle) and back.
Value dual_ac_forward(const InteractionSystem& w, const Value& state,
                      const SemStep<Value>& step);
SemStep<Value> dual_ac_backward(const InteractionSystem& w, const Value& state,
                                const Value& per_action);

}  // namespace itx

#endif  // ITX_INTERACTION_HPP
