#ifndef ITX_SIMULATE_HPP
#define ITX_SIMULATE_HPP

#include "itx/behavior.hpp"
#include "itx/interaction.hpp"
#include "itx/wftree.hpp"

namespace itx {

/// One simulation step: the source action to play and, per source response,
/// the target response together with the next witness.
struct SimStep {
  Value action;
  std::function<std::pair<Value, Value>(const Value& source_response)> then;
};

/// A linear simulation between systems: for every related state pair and
/// every target action, one source action whose responses translate back.
/// Witnesses are Values threaded through the steps.
struct LinearSim {
  InteractionSystem source;
  InteractionSystem target;
  std::function<SimStep(const Value& source_state, const Value& target_state,
                        const Value& witness, const Value& target_action)>
      rho;
};

/// The identity simulation (equal states, witness passed through).
LinearSim sim_id(const InteractionSystem& w);

/// Relational composition. Witnesses are ⟨mid_state, ⟨r, s⟩⟩ triples built by
/// `compose_witness`, where r witnesses the inner (first-applied) simulation
/// and s the outer one.
LinearSim sim_compose(const LinearSim& outer, const LinearSim& inner);
Value compose_witness(const Value& mid_state, const Value& inner_witness,
                      const Value& outer_witness);

/// Evaluates a linear simulation as a transducer: consumes a behavior over
/// dual(source) (at its own state) and produces a behavior over dual(target)
/// at `target_state`. Construction performs no input queries; each produced
/// step queries the input once per requested target action (shared between
/// the action value and the continuation).
Behavior eval_linear(const LinearSim& sim, const Value& target_state,
                     const Value& witness, const Behavior& input);

/// Counit: answers a plain action with the single-request tree.
LinearSim epsilon(const InteractionSystem& w);

/// Comultiplication: flattens trees of trees by grafting (identity
/// witnesses; paths translated forward).
LinearSim delta(const InteractionSystem& w);

/// Functorial action on request trees: translates a target tree node by node
/// and maps completed paths back.
LinearSim star_lift(const LinearSim& sim);

/// A simulation whose requests are whole trees: a linear simulation from
/// star(source). `source` is the base system the trees are over.
struct GeneralSim {
  InteractionSystem source;
  InteractionSystem target;
  LinearSim linear;
};

GeneralSim make_general(
    const InteractionSystem& source, const InteractionSystem& target,
    std::function<SimStep(const Value&, const Value&, const Value&, const Value&)>
        rho);

/// Views a linear simulation as tree-requesting (single-node requests).
GeneralSim generalize(const LinearSim& sim);

/// The counit as a general simulation (identity on behaviors).
GeneralSim epsilon_general(const InteractionSystem& w);

/// Kleisli-style extension: lifts a general simulation to trees on both
/// sides (tree translation after grafting). Witnesses are the simulation's
/// own witnesses.
LinearSim cobind(const GeneralSim& sim);

/// Composition of general simulations through `cobind`. Witnesses are
/// ⟨mid_state, ⟨r, s⟩⟩ triples (same shape as `compose_witness`).
GeneralSim bullet(const GeneralSim& outer, const GeneralSim& inner);

/// Answers tree requests by eating them against a plain behavior; the
/// converse restricts a tree-answering behavior to single-node requests.
Behavior to_star_behavior(const InteractionSystem& w, const Behavior& input);
Behavior from_star_behavior(const InteractionSystem& w, const Behavior& input);

/// Evaluates a general simulation: tree requests are eaten against the
/// input, then evaluated linearly.
Behavior eval_general(const GeneralSim& sim, const Value& target_state,
                      const Value& witness, const Behavior& input);

}  // namespace itx

#endif  // ITX_SIMULATE_HPP
