#include "itx/layering.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "itx/cache.hpp"

namespace itx {

Value layer_leaf() { return Value::left(Value::unit()); }

Value layer_grow(Value prev, Value layer) {
  return Value::right(Value::pair(std::move(prev), std::move(layer)));
}

bool layer_is_leaf(const Value& t) { return t.is(Value::Kind::Left); }

Value layer_prev(const Value& t) { return t.inner().first(); }

Value layer_fn(const Value& t) { return t.inner().second(); }

Enumeration sharp_positions(const InteractionSystem& w, const Value& root,
                            const Value& t) {
  if (layer_is_leaf(t)) return Enumeration::of({Value::unit()});
  Value prev = layer_prev(t);
  Value l = layer_fn(t);
  auto base = std::make_shared<const InteractionSystem>(w);
  auto fiber = [base, root, prev, l](const Value& beta) -> Enumeration {
    Value state = sharp_next(*base, root, prev, beta);
    return base->responses(state, l.apply(beta));
  };
  return Enumeration::sigma(sharp_positions(w, root, prev), fiber);
}

Value sharp_next(const InteractionSystem& w, const Value& root, const Value& t,
                 const Value& position) {
  if (layer_is_leaf(t)) return root;
  Value prev = layer_prev(t);
  Value l = layer_fn(t);
  Value beta = position.first();
  Value d = position.second();
  Value state = sharp_next(w, root, prev, beta);
  return w.next(state, l.apply(beta), d);
}

InteractionSystem layered(const InteractionSystem& w, const Value& root,
                          std::size_t per_axis) {
  auto base = std::make_shared<const InteractionSystem>(w);
  InteractionSystem out;
  out.name = w.name + "/layered";
  out.actions = [base, root, per_axis](const Value& t) -> Enumeration {
    auto codomain = [base, root, t](const Value& beta) -> Enumeration {
      return base->actions(sharp_next(*base, root, t, beta));
    };
    return Enumeration::fn_space(sharp_positions(*base, root, t), codomain,
                                 per_axis);
  };
  out.responses = [](const Value&, const Value&) -> Enumeration {
    return Enumeration::of({Value::unit()});
  };
  out.next = [](const Value& t, const Value& layer, const Value&) -> Value {
    return layer_grow(t, layer);
  };
  return out;
}

namespace {

/// Residual behavior at every frontier position, keyed by the position's
/// canonical encoding. Rebuilt per produced layer.
struct LayerTable {
  std::map<Bytes, std::pair<Value, Behavior>> rows;
};

}  // namespace

Behavior to_layers(const Behavior& input) {
  auto base = std::make_shared<const InteractionSystem>(input.system());
  Value root = input.state();
  auto lay = std::make_shared<const InteractionSystem>(layered(*base, root));
  Behavior::Step step = [base, root](const Value& t,
                                     const Value& seed) -> SemStep<Value> {
    auto table = std::make_shared<const LayerTable>(seed.unbox<LayerTable>());
    // One unfolding per position, computed on demand and shared between the
    // layer function and the continuation.
    auto cache = std::make_shared<KeyedCache<Unfolding>>();
    auto probe = [table, cache](const Value& beta) -> Unfolding {
      return cache->get(beta, [&]() -> Unfolding {
        auto it = table->rows.find(beta.encode());
        if (it == table->rows.end())
          throw ShapeError("position is not on the current frontier");
        return it->second.second.unfold();
      });
    };
    Value layer = Value::fn(
        [probe](const Value& beta) -> Value { return probe(beta).action; },
        sharp_positions(*base, root, t));
    auto responses = base->responses;
    auto then = [table, probe, responses](const Value&) -> Value {
      LayerTable next;
      for (const auto& [key, row] : table->rows) {
        const Value& beta = row.first;
        Unfolding u = probe(beta);
        std::vector<Value> ds =
            responses(row.second.state(), u.action).exhaust(kDefaultBudget);
        for (const Value& d : ds) {
          Value pos = Value::pair(beta, d);
          next.rows.emplace(pos.encode(), std::make_pair(pos, u.next(d)));
        }
      }
      return Value::boxed<LayerTable>(std::move(next));
    };
    return SemStep<Value>{layer, then};
  };
  LayerTable t0;
  t0.rows.emplace(Value::unit().encode(),
                  std::make_pair(Value::unit(), input));
  return Behavior(lay, layer_leaf(), Value::boxed<LayerTable>(std::move(t0)),
                  step);
}

namespace {

struct FromLayersSeed {
  Behavior layers;
  Value position;
};

}  // namespace

Behavior from_layers(const InteractionSystem& w, const Value& root,
                     const Behavior& layers) {
  auto base = std::make_shared<const InteractionSystem>(w);
  Behavior::Step step = [](const Value&, const Value& seed) -> SemStep<Value> {
    const FromLayersSeed& s = seed.unbox<FromLayersSeed>();
    Unfolding u = s.layers.unfold();
    Value action = u.action.apply(s.position);
    Value beta = s.position;
    auto unext = u.next;
    auto then = [unext, beta](const Value& d) -> Value {
      return Value::boxed<FromLayersSeed>(
          FromLayersSeed{unext(Value::unit()), Value::pair(beta, d)});
    };
    return SemStep<Value>{action, then};
  };
  return Behavior(base, root,
                  Value::boxed<FromLayersSeed>(
                      FromLayersSeed{layers, Value::unit()}),
                  step);
}

Behavior dd_wrap(const Behavior& input) {
  auto v = std::make_shared<const InteractionSystem>(input.system());
  auto vd = std::make_shared<const InteractionSystem>(dual(*v));
  auto out = std::make_shared<const InteractionSystem>(dual(*vd));
  Behavior::Step step = [vd](const Value& i, const Value& seed) -> SemStep<Value> {
    Behavior in = seed.unbox<Behavior>();
    // The inner behavior is unfolded once, on demand, shared by the action
    // and the continuation.
    auto cell = std::make_shared<std::optional<Unfolding>>();
    auto force = [in, cell]() -> const Unfolding& {
      if (!cell->has_value()) *cell = in.unfold();
      return **cell;
    };
    Value choice = Value::fn(
        [force](const Value&) -> Value { return force().action; },
        vd->actions(i));
    auto then = [force](const Value& cf) -> Value {
      const Unfolding& u = force();
      return Value::boxed<Behavior>(u.next(cf.apply(u.action)));
    };
    return SemStep<Value>{choice, then};
  };
  return Behavior(out, input.state(), Value::boxed<Behavior>(input), step);
}

Behavior dd_unwrap(const InteractionSystem& w, const Behavior& input) {
  auto v = std::make_shared<const InteractionSystem>(w);
  Behavior::Step step = [v](const Value& i, const Value& seed) -> SemStep<Value> {
    Behavior in = seed.unbox<Behavior>();
    Unfolding u = in.unfold();
    // The constant choice answering every action with its first response
    // (the only one under the singleton-response precondition).
    auto responses = v->responses;
    Value cf = Value::fn(
        [responses, i](const Value& a) -> Value {
          std::optional<Value> d0 = responses(i, a).nth(0);
          if (!d0.has_value())
            throw ShapeError(
                "double-dual transport needs a response to advance");
          return *d0;
        },
        v->actions(i));
    Value action = u.action.apply(cf);
    auto unext = u.next;
    auto then = [unext, cf](const Value&) -> Value {
      return Value::boxed<Behavior>(unext(cf));
    };
    return SemStep<Value>{action, then};
  };
  return Behavior(v, input.state(), Value::boxed<Behavior>(input), step);
}

LayeredSim make_layered_sim(
    const InteractionSystem& w1, const Value& i1, const InteractionSystem& w2,
    const Value& i2,
    std::function<SimStep(const Value&, const Value&, const Value&, const Value&)>
        rho) {
  LayeredSim ls;
  ls.w1 = w1;
  ls.i1 = i1;
  ls.w2 = w2;
  ls.i2 = i2;
  ls.sim = make_general(dual(layered(dual(w1), i1)),
                        dual(layered(dual(w2), i2)), std::move(rho));
  return ls;
}

InteractionSystem layered_source(const LayeredSim& ls) {
  return dual(layered(dual(ls.w1), ls.i1));
}

InteractionSystem layered_target(const LayeredSim& ls) {
  return dual(layered(dual(ls.w2), ls.i2));
}

LayeredSim layered_id(const InteractionSystem& w, const Value& i) {
  LayeredSim ls;
  ls.w1 = w;
  ls.i1 = i;
  ls.w2 = w;
  ls.i2 = i;
  ls.sim = epsilon_general(dual(layered(dual(w), i)));
  return ls;
}

Behavior eval_layered(const LayeredSim& ls, const Value& witness,
                      const Behavior& input) {
  Behavior layers_in = to_layers(input);
  Behavior wrapped = dd_wrap(layers_in);
  Behavior out_wrapped = eval_general(ls.sim, layer_leaf(), witness, wrapped);
  InteractionSystem lay2 = layered(dual(ls.w2), ls.i2);
  Behavior out_layers = dd_unwrap(lay2, out_wrapped);
  return from_layers(dual(ls.w2), ls.i2, out_layers);
}

LayeredSim layered_bullet(const LayeredSim& outer, const LayeredSim& inner) {
  LayeredSim ls;
  ls.w1 = inner.w1;
  ls.i1 = inner.i1;
  ls.w2 = outer.w2;
  ls.i2 = outer.i2;
  ls.sim = bullet(outer.sim, inner.sim);
  return ls;
}

}  // namespace itx
