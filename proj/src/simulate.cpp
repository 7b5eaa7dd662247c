#include "itx/simulate.hpp"

#include <optional>
#include <utility>

#include "itx/cache.hpp"

namespace itx {

namespace {

using Rho =
    std::function<SimStep(const Value&, const Value&, const Value&, const Value&)>;

struct EvalSeed {
  Behavior input;
  Value witness;
};

struct EvalOutcome {
  Value response;
  Value witness;
  Behavior residual;
};

}  // namespace

LinearSim sim_id(const InteractionSystem& w) {
  LinearSim s;
  s.source = w;
  s.target = w;
  s.rho = [](const Value&, const Value&, const Value& witness,
             const Value& action) -> SimStep {
    return SimStep{action, [witness](const Value& d) {
                     return std::make_pair(d, witness);
                   }};
  };
  return s;
}

Value compose_witness(const Value& mid_state, const Value& inner_witness,
                      const Value& outer_witness) {
  return Value::pair(mid_state, Value::pair(inner_witness, outer_witness));
}

LinearSim sim_compose(const LinearSim& outer, const LinearSim& inner) {
  LinearSim s;
  s.source = inner.source;
  s.target = outer.target;
  auto mid = std::make_shared<const InteractionSystem>(inner.target);
  Rho rho_outer = outer.rho;
  Rho rho_inner = inner.rho;
  s.rho = [mid, rho_outer, rho_inner](const Value& i1, const Value& i3,
                                      const Value& witness,
                                      const Value& a3) -> SimStep {
    Value i2 = witness.first();
    Value r = witness.second().first();
    Value sw = witness.second().second();
    SimStep so = rho_outer(i2, i3, sw, a3);
    SimStep si = rho_inner(i1, i2, r, so.action);
    Value a2 = so.action;
    auto then_outer = so.then;
    auto then_inner = si.then;
    auto next2 = mid->next;
    return SimStep{si.action,
                   [then_outer, then_inner, next2, i2, a2](const Value& d1) {
                     std::pair<Value, Value> md = then_inner(d1);
                     std::pair<Value, Value> out = then_outer(md.first);
                     Value i2_next = next2(i2, a2, md.first);
                     return std::make_pair(
                         out.first,
                         compose_witness(i2_next, md.second, out.second));
                   }};
  };
  return s;
}

Behavior eval_linear(const LinearSim& sim, const Value& target_state,
                     const Value& witness, const Behavior& input) {
  auto target = std::make_shared<const InteractionSystem>(sim.target);
  auto out = std::make_shared<const InteractionSystem>(dual(sim.target));
  Rho rho = sim.rho;
  Behavior::Step step = [rho, target](const Value& i2,
                                      const Value& seed) -> SemStep<Value> {
    const EvalSeed& es = seed.unbox<EvalSeed>();
    Behavior in = es.input;
    Value w = es.witness;
    auto cache = std::make_shared<KeyedCache<EvalOutcome>>();
    auto outcome = [rho, i2, in, w, cache](const Value& a2) -> EvalOutcome {
      return cache->get(a2, [&]() -> EvalOutcome {
        SimStep st = rho(in.state(), i2, w, a2);
        Unfolding u = in.unfold();
        Value d1 = u.action.apply(st.action);
        std::pair<Value, Value> dw = st.then(d1);
        return EvalOutcome{dw.first, dw.second, u.next(st.action)};
      });
    };
    Value choice = Value::fn(
        [outcome](const Value& a2) -> Value { return outcome(a2).response; },
        target->actions(i2));
    auto then = [outcome](const Value& a2) -> Value {
      EvalOutcome o = outcome(a2);
      return Value::boxed<EvalSeed>(EvalSeed{o.residual, o.witness});
    };
    return SemStep<Value>{choice, then};
  };
  return Behavior(out, target_state,
                  Value::boxed<EvalSeed>(EvalSeed{input, witness}), step);
}

LinearSim epsilon(const InteractionSystem& w) {
  LinearSim s;
  s.target = w;
  s.source = star(w);
  auto base = std::make_shared<const InteractionSystem>(w);
  s.rho = [base](const Value& i1, const Value&, const Value& witness,
                 const Value& action) -> SimStep {
    Value tree = wft_request(*base, i1, std::move(action));
    return SimStep{tree, [witness](const Value& path) {
                     return std::make_pair(path.first(), witness);
                   }};
  };
  return s;
}

LinearSim delta(const InteractionSystem& w) {
  LinearSim s;
  s.source = star(w);
  s.target = star(s.source);
  auto base = std::make_shared<const InteractionSystem>(w);
  s.rho = [base](const Value& i, const Value&, const Value& witness,
                 const Value& tree2) -> SimStep {
    Value flat = graft(*base, i, tree2);
    return SimStep{flat, [base, i, tree2, witness](const Value& flat_path) {
                     Value nested = graft_path_forward(*base, i, tree2, flat_path);
                     return std::make_pair(nested, witness);
                   }};
  };
  return s;
}

namespace {

Value lift_tree(const std::shared_ptr<const InteractionSystem>& w1,
                const std::shared_ptr<const InteractionSystem>& w2,
                const Rho& rho, const Value& i1, const Value& i2,
                const Value& witness, const Value& t2) {
  if (wft_is_leaf(t2)) return wft_leaf(wft_payload(t2));
  Value a2 = wft_action(t2);
  SimStep st = rho(i1, i2, witness, a2);
  Value a1 = st.action;
  auto then = st.then;
  auto children = [w1, w2, rho, i1, i2, a1, a2, then, t2](const Value& d1) {
    std::pair<Value, Value> dw = then(d1);
    Value j1 = w1->next(i1, a1, d1);
    Value j2 = w2->next(i2, a2, dw.first);
    return lift_tree(w1, w2, rho, j1, j2, dw.second, wft_child(t2, dw.first));
  };
  return wft_node(*w1, i1, a1, children);
}

std::pair<Value, Value> walk_path(
    const std::shared_ptr<const InteractionSystem>& w1,
    const std::shared_ptr<const InteractionSystem>& w2, const Rho& rho,
    const Value& i1, const Value& i2, const Value& witness, const Value& t2,
    const Value& path) {
  if (wft_is_leaf(t2)) {
    if (!path_is_done(path))
      throw ShapeError("path continues past a leaf of the lifted tree");
    return {path_done(), witness};
  }
  if (path_is_done(path))
    throw ShapeError("path ends inside the lifted tree");
  Value a2 = wft_action(t2);
  SimStep st = rho(i1, i2, witness, a2);
  Value d1 = path.first();
  std::pair<Value, Value> dw = st.then(d1);
  Value j1 = w1->next(i1, st.action, d1);
  Value j2 = w2->next(i2, a2, dw.first);
  std::pair<Value, Value> rest = walk_path(
      w1, w2, rho, j1, j2, dw.second, wft_child(t2, dw.first), path.second());
  return {path_step(dw.first, rest.first), rest.second};
}

}  // namespace

LinearSim star_lift(const LinearSim& sim) {
  LinearSim s;
  s.source = star(sim.source);
  s.target = star(sim.target);
  auto w1 = std::make_shared<const InteractionSystem>(sim.source);
  auto w2 = std::make_shared<const InteractionSystem>(sim.target);
  Rho rho = sim.rho;
  s.rho = [w1, w2, rho](const Value& i1, const Value& i2, const Value& witness,
                        const Value& t2) -> SimStep {
    Value lifted = lift_tree(w1, w2, rho, i1, i2, witness, t2);
    return SimStep{lifted,
                   [w1, w2, rho, i1, i2, witness, t2](const Value& p1) {
                     return walk_path(w1, w2, rho, i1, i2, witness, t2, p1);
                   }};
  };
  return s;
}

GeneralSim make_general(
    const InteractionSystem& source, const InteractionSystem& target,
    std::function<SimStep(const Value&, const Value&, const Value&, const Value&)>
        rho) {
  GeneralSim g;
  g.source = source;
  g.target = target;
  g.linear.source = star(source);
  g.linear.target = target;
  g.linear.rho = std::move(rho);
  return g;
}

namespace {

/// Rewraps a composite whose inner simulation carries a unit witness so the
/// exposed witness is the outer one alone.
Rho plain_witness(const Rho& rho_composite) {
  return [rho_composite](const Value& i1, const Value& i2, const Value& r,
                         const Value& a2) -> SimStep {
    SimStep st = rho_composite(i1, i2, compose_witness(i1, Value::unit(), r), a2);
    auto then = st.then;
    return SimStep{st.action, [then](const Value& d1) {
                     std::pair<Value, Value> dw = then(d1);
                     return std::make_pair(dw.first,
                                           dw.second.second().second());
                   }};
  };
}

}  // namespace

GeneralSim generalize(const LinearSim& sim) {
  GeneralSim g;
  g.source = sim.source;
  g.target = sim.target;
  LinearSim composite = sim_compose(sim, epsilon(sim.source));
  g.linear.source = composite.source;
  g.linear.target = composite.target;
  g.linear.rho = plain_witness(composite.rho);
  return g;
}

GeneralSim epsilon_general(const InteractionSystem& w) {
  GeneralSim g;
  g.source = w;
  g.target = w;
  g.linear = epsilon(w);
  return g;
}

LinearSim cobind(const GeneralSim& sim) {
  LinearSim composite = sim_compose(star_lift(sim.linear), delta(sim.source));
  LinearSim s;
  s.source = composite.source;
  s.target = composite.target;
  s.rho = plain_witness(composite.rho);
  return s;
}

GeneralSim bullet(const GeneralSim& outer, const GeneralSim& inner) {
  GeneralSim g;
  g.source = inner.source;
  g.target = outer.target;
  g.linear = sim_compose(outer.linear, cobind(inner));
  return g;
}

Behavior to_star_behavior(const InteractionSystem& w, const Behavior& input) {
  auto base = std::make_shared<const InteractionSystem>(w);
  auto starred = std::make_shared<const InteractionSystem>(star(w));
  auto out = std::make_shared<const InteractionSystem>(dual(*starred));
  Behavior::Step step = [base, starred](const Value& i,
                                        const Value& seed) -> SemStep<Value> {
    Behavior in = seed.unbox<Behavior>();
    auto cache = std::make_shared<KeyedCache<EatResult>>();
    auto run = [base, i, in, cache](const Value& tree) -> EatResult {
      return cache->get(tree,
                        [&]() -> EatResult { return eat(*base, i, tree, in); });
    };
    Value choice = Value::fn(
        [run](const Value& tree) -> Value { return run(tree).path; },
        starred->actions(i));
    auto then = [run](const Value& tree) -> Value {
      return Value::boxed<Behavior>(run(tree).residual);
    };
    return SemStep<Value>{choice, then};
  };
  return Behavior(out, input.state(), Value::boxed<Behavior>(input), step);
}

Behavior from_star_behavior(const InteractionSystem& w, const Behavior& input) {
  auto base = std::make_shared<const InteractionSystem>(w);
  auto out = std::make_shared<const InteractionSystem>(dual(*base));
  Behavior::Step step = [base](const Value& i,
                               const Value& seed) -> SemStep<Value> {
    Behavior in = seed.unbox<Behavior>();
    Unfolding u = in.unfold();
    auto cache = std::make_shared<KeyedCache<std::pair<Value, Value>>>();
    // Per plain action: the single-node request and its answered path.
    auto probe = [base, i, u, cache](const Value& a) -> std::pair<Value, Value> {
      return cache->get(a, [&]() -> std::pair<Value, Value> {
        Value request = wft_request(*base, i, a);
        Value path = u.action.apply(request);
        return std::make_pair(request, path);
      });
    };
    Value choice = Value::fn(
        [probe](const Value& a) -> Value { return probe(a).second.first(); },
        base->actions(i));
    auto unext = u.next;
    auto then = [probe, unext](const Value& a) -> Value {
      return Value::boxed<Behavior>(unext(probe(a).first));
    };
    return SemStep<Value>{choice, then};
  };
  return Behavior(out, input.state(), Value::boxed<Behavior>(input), step);
}

Behavior eval_general(const GeneralSim& sim, const Value& target_state,
                      const Value& witness, const Behavior& input) {
  return eval_linear(sim.linear, target_state, witness,
                     to_star_behavior(sim.source, input));
}

}  // namespace itx
