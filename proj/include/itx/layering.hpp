#ifndef ITX_LAYERING_HPP
#define ITX_LAYERING_HPP

#include "itx/behavior.hpp"
#include "itx/interaction.hpp"
#include "itx/simulate.hpp"

namespace itx {

/// Layer trees record how many complete layers have been played:
///   leaf          = left(unit)
///   grow(t, l)    = right(pair(t, l)) where l maps every frontier position
///                   of t to an action at the state that position reaches.
Value layer_leaf();
Value layer_grow(Value prev, Value layer);
bool layer_is_leaf(const Value& t);
Value layer_prev(const Value& t);
Value layer_fn(const Value& t);

/// Frontier positions of a layer tree over `w` anchored at `root` (the leaf
/// has the single position unit; growing extends each position by one
/// response), and the state a position reaches.
Enumeration sharp_positions(const InteractionSystem& w, const Value& root,
                            const Value& t);
Value sharp_next(const InteractionSystem& w, const Value& root, const Value& t,
                 const Value& position);

/// The layered system on `w` anchored at `root`: states are layer trees,
/// actions are whole layers (position-indexed action tables), the single
/// response grows the tree by that layer.
InteractionSystem layered(const InteractionSystem& w, const Value& root,
                          std::size_t per_axis = kDefaultBudget);

/// Layer-by-layer views of a behavior over `w`:
///   to_layers    answers whole layers at once; advancing a layer unfolds
///                every frontier position (layers complete or fail loudly).
///   from_layers  replays a layer stream one position at a time.
/// Round trips agree up to depth-bounded bisimilarity.
Behavior to_layers(const Behavior& input);
Behavior from_layers(const InteractionSystem& w, const Value& root,
                     const Behavior& layers);

/// Double-dual transport for systems with exactly one response per action
/// (layered systems qualify): behaviors over w become behaviors over
/// dual(dual(w)) and back. `dd_unwrap` advances the wrapped behavior with
/// the first enumerated response, which is the only one under the
/// singleton-response precondition.
Behavior dd_wrap(const Behavior& input);
Behavior dd_unwrap(const InteractionSystem& w, const Behavior& input);

/// A simulation between layered views of two systems: `sim` runs from the
/// dual of the layered view of dual(w1) to the dual of the layered view of
/// dual(w2), so its requests read whole input layers and its outputs emit
/// whole output layers.
struct LayeredSim {
  InteractionSystem w1;  // endpoint bases (not duals)
  Value i1;
  InteractionSystem w2;
  Value i2;
  GeneralSim sim;
};

LayeredSim make_layered_sim(
    const InteractionSystem& w1, const Value& i1, const InteractionSystem& w2,
    const Value& i2,
    std::function<SimStep(const Value&, const Value&, const Value&, const Value&)>
        rho);

/// The systems the layered simulation's requests and outputs live over.
InteractionSystem layered_source(const LayeredSim& ls);
InteractionSystem layered_target(const LayeredSim& ls);

/// Identity layered simulation on one endpoint.
LayeredSim layered_id(const InteractionSystem& w, const Value& i);

/// End-to-end evaluation: consumes a behavior over dual(w1) at i1 and
/// produces a behavior over dual(w2) at i2 by conjugating the layered
/// simulation with the layer/double-dual transports.
Behavior eval_layered(const LayeredSim& ls, const Value& witness,
                      const Behavior& input);

/// Composition of layered simulations with matching endpoints; witnesses
/// compose exactly as for `bullet`.
LayeredSim layered_bullet(const LayeredSim& outer, const LayeredSim& inner);

}  // namespace itx

#endif  // ITX_LAYERING_HPP
