#include "itx/interaction.hpp"

namespace itx {

InteractionSystem compose_is(const InteractionSystem& w1,
                             const InteractionSystem& w2,
                             std::size_t per_axis) {
  InteractionSystem out;
  out.name = w2.name + "∘" + w1.name;
  out.actions = [w1, w2, per_axis](const Value& i) -> Enumeration {
    // Σ a1. Π d1. A2(i[a1/d1]), tabulated per a1.
    return Enumeration::sigma(
        w1.actions(i), [w1, w2, i, per_axis](const Value& a1) -> Enumeration {
          return Enumeration::fn_space(
              w1.responses(i, a1),
              [w1, w2, i, a1](const Value& d1) -> Enumeration {
                return w2.actions(w1.next(i, a1, d1));
              },
              per_axis);
        });
  };
  out.responses = [w1, w2](const Value& i, const Value& a) -> Enumeration {
    Value a1 = a.first();
    Value f = a.second();
    return Enumeration::sigma(
        w1.responses(i, a1), [w1, w2, i, a1, f](const Value& d1) -> Enumeration {
          return w2.responses(w1.next(i, a1, d1), f.apply(d1));
        });
  };
  out.next = [w1, w2](const Value& i, const Value& a, const Value& d) -> Value {
    Value a1 = a.first();
    Value f = a.second();
    Value d1 = d.first();
    Value d2 = d.second();
    Value mid = w1.next(i, a1, d1);
    return w2.next(mid, f.apply(d1), d2);
  };
  return out;
}

InteractionSystem dual(const InteractionSystem& w, std::size_t per_axis) {
  InteractionSystem out;
  out.name = w.name + "⊥";
  out.actions = [w, per_axis](const Value& i) -> Enumeration {
    return Enumeration::fn_space(
        w.actions(i),
        [w, i](const Value& a) -> Enumeration { return w.responses(i, a); },
        per_axis);
  };
  out.responses = [w](const Value& i, const Value&) -> Enumeration {
    return w.actions(i);
  };
  out.next = [w](const Value& i, const Value& choice, const Value& a) -> Value {
    return w.next(i, a, choice.apply(a));
  };
  out.dual_base = std::make_shared<const InteractionSystem>(w);
  return out;
}

InteractionSystem hom(const InteractionSystem& w1, const InteractionSystem& w2,
                      std::size_t per_axis) {
  InteractionSystem out;
  out.name = w1.name + "⊸" + w2.name;
  out.actions = [w1, w2, per_axis](const Value& s) -> Enumeration {
    Value i1 = s.first();
    Value i2 = s.second();
    // Σ f : (A2 → A1). Π a2. (D1(i1, f a2) → D2(i2, a2))
    return Enumeration::sigma(
        Enumeration::fn_space(
            w2.actions(i2),
            [w1, i1](const Value&) -> Enumeration { return w1.actions(i1); },
            per_axis),
        [w1, w2, i1, i2, per_axis](const Value& f) -> Enumeration {
          return Enumeration::fn_space(
              w2.actions(i2),
              [w1, w2, i1, i2, f, per_axis](const Value& a2) -> Enumeration {
                return Enumeration::fn_space(
                    w1.responses(i1, f.apply(a2)),
                    [w2, i2, a2](const Value&) -> Enumeration {
                      return w2.responses(i2, a2);
                    },
                    per_axis);
              },
              per_axis);
        });
  };
  out.responses = [w1, w2](const Value& s, const Value& act) -> Enumeration {
    Value i1 = s.first();
    Value i2 = s.second();
    Value f = act.first();
    return Enumeration::sigma(
        w2.actions(i2), [w1, i1, f](const Value& a2) -> Enumeration {
          return w1.responses(i1, f.apply(a2));
        });
  };
  out.next = [w1, w2](const Value& s, const Value& act, const Value& resp)
      -> Value {
    Value i1 = s.first();
    Value i2 = s.second();
    Value f = act.first();
    Value phi = act.second();
    Value a2 = resp.first();
    Value d1 = resp.second();
    Value d2 = phi.apply(a2).apply(d1);
    return Value::pair(w1.next(i1, f.apply(a2), d1), w2.next(i2, a2, d2));
  };
  return out;
}

Value hom_state(const Value& i1, const Value& i2) { return Value::pair(i1, i2); }

SemStep<Value> ac_forward(const InteractionSystem& w1,
                          const InteractionSystem& w2, const Value& state,
                          const SemStep<SemStep<Value>>& nested) {
  Value a1 = nested.action;
  auto inner = nested.then;
  Value f = Value::fn(
      [inner](const Value& d1) -> Value { return inner(d1).action; },
      w1.responses(state, a1));
  SemStep<Value> flat;
  flat.action = Value::pair(a1, f);
  flat.then = [inner](const Value& d) -> Value {
    return inner(d.first()).then(d.second());
  };
  return flat;
}

SemStep<SemStep<Value>> ac_backward(const InteractionSystem& w1,
                                    const InteractionSystem& w2,
                                    const Value& state,
                                    const SemStep<Value>& flat) {
  Value a1 = flat.action.first();
  Value f = flat.action.second();
  auto then = flat.then;
  SemStep<SemStep<Value>> nested;
  nested.action = a1;
  nested.then = [f, then](const Value& d1) -> SemStep<Value> {
    SemStep<Value> second;
    second.action = f.apply(d1);
    second.then = [then, d1](const Value& d2) -> Value {
      return then(Value::pair(d1, d2));
    };
    return second;
  };
  return nested;
}

Value dual_ac_forward(const InteractionSystem& w, const Value& state,
                      const SemStep<Value>& step) {
  Value choice = step.action;
  auto then = step.then;
  return Value::fn(
      [choice, then](const Value& a) -> Value {
        return Value::pair(choice.apply(a), then(a));
      },
      w.actions(state));
}

SemStep<Value> dual_ac_backward(const InteractionSystem& w, const Value& state,
                                const Value& per_action) {
  SemStep<Value> step;
  step.action = Value::fn(
      [per_action](const Value& a) -> Value { return per_action.apply(a).first(); },
      w.actions(state));
  step.then = [per_action](const Value& a) -> Value {
    return per_action.apply(a).second();
  };
  return step;
}

}  // namespace itx
