#include "itx/laws.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "itx/behavior.hpp"
#include "itx/fixtures.hpp"
#include "itx/interaction.hpp"
#include "itx/layering.hpp"
#include "itx/simulate.hpp"
#include "itx/wftree.hpp"

namespace itx {
namespace {

using Checks = std::vector<LawCheck>;
using Verdict = std::pair<bool, std::string>;

Verdict ok() { return {true, std::string()}; }
Verdict fail(std::string why) { return {false, std::move(why)}; }

/// Runs one check body, converting exceptions into failures.
void check(Checks& out, const std::string& name,
           const std::function<Verdict()>& body) {
  try {
    auto [pass, detail] = body();
    out.push_back(LawCheck{name, pass, pass ? std::string() : detail});
  } catch (const std::exception& e) {
    out.push_back(LawCheck{name, false, std::string("threw: ") + e.what()});
  }
}

Verdict expect_bisim(const Behavior& lhs, const Behavior& rhs,
                     std::size_t depth, const Budget& budget) {
  BisimResult r = bisim_depth(lhs, rhs, depth, budget);
  if (r.related) return ok();
  std::string why = "distinguished within depth " + std::to_string(depth);
  if (!r.notes.empty()) why += " (" + r.notes.front() + ")";
  return fail(why);
}

std::string show_nats(const std::vector<std::uint64_t>& xs) {
  std::ostringstream out;
  out << "[";
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) out << ", ";
    out << xs[k];
  }
  out << "]";
  return out.str();
}

std::optional<std::vector<std::uint64_t>> take_nats(const Behavior& b,
                                                    std::size_t n) {
  std::optional<std::vector<Value>> vs = take_stream(b, n);
  if (!vs.has_value()) return std::nullopt;
  std::vector<std::uint64_t> out;
  out.reserve(vs->size());
  for (const Value& v : *vs) out.push_back(v.as_nat());
  return out;
}

Verdict expect_nats(const Behavior& b, const std::vector<std::uint64_t>& want) {
  std::optional<std::vector<std::uint64_t>> got = take_nats(b, want.size());
  if (!got.has_value()) return fail("output is not stream-shaped");
  if (*got != want)
    return fail("got " + show_nats(*got) + ", want " + show_nats(want));
  return ok();
}

/// Payload of the leaf reached by walking `path` down `tree`.
Value leaf_at(const InteractionSystem& w, Value state, Value tree, Value path) {
  while (!wft_is_leaf(tree)) {
    Value d = path.first();
    Value a = wft_action(tree);
    state = w.next(state, a, d);
    tree = wft_child(tree, d);
    path = path.second();
  }
  if (!path_is_done(path)) throw ShapeError("path continues past a leaf");
  return wft_payload(tree);
}

std::uint64_t leaf_count(const InteractionSystem& w, const Value& state,
                         const Value& tree) {
  std::function<std::uint64_t(const Value&, const Value&)> leaf =
      [](const Value&, const Value&) -> std::uint64_t { return 1; };
  std::function<std::uint64_t(const Value&, const SemStep<std::uint64_t>&)>
      node = [&w](const Value& st,
                  const SemStep<std::uint64_t>& step) -> std::uint64_t {
        std::uint64_t total = 0;
        for (const Value& d : w.responses(st, step.action).exhaust(256))
          total += step.then(d);
        return total;
      };
  return fm_fold<std::uint64_t>(w, state, tree, leaf, node);
}

/// The constant-zero stream over the dual of the plain stream system.
Behavior zeros_stream() {
  auto base = std::make_shared<const InteractionSystem>(w_stream());
  auto out = std::make_shared<const InteractionSystem>(dual(*base));
  Behavior::Step step = [base](const Value&, const Value&) -> SemStep<Value> {
    Value choice = Value::fn([](const Value&) { return Value::nat(0); },
                             base->actions(Value::unit()));
    return SemStep<Value>{choice, [](const Value&) { return Value::unit(); }};
  };
  return Behavior(out, Value::unit(), Value::unit(), step);
}

/// Element function of rand_stream(seed), for feeding oracles.
std::function<std::uint64_t(std::uint64_t)> rand_stream_elements(
    std::uint64_t seed) {
  auto digits = std::make_shared<std::vector<std::uint64_t>>();
  auto state = std::make_shared<std::uint64_t>(seed);
  return [digits, state](std::uint64_t k) {
    while (digits->size() <= k) {
      digits->push_back(mix64(*state) % 10);
      *state = mix64(*state);
    }
    return (*digits)[k];
  };
}

// --------------------------------------------------------------------------
// extension: functor laws of the one-step observation
// --------------------------------------------------------------------------

Checks suite_extension(const LawParams& p) {
  Checks out;
  (void)p;
  InteractionSystem w = w_finite();
  Value i0 = Value::nat(0);
  SemStep<Value> step;
  step.action = Value::nat(0);
  step.then = [](const Value& d) { return Value::nat(d.as_nat() + 7); };
  std::vector<Value> responses = w.responses(i0, step.action).exhaust(16);

  check(out, "map-identity", [&]() -> Verdict {
    std::function<Value(const Value&)> id = [](const Value& x) { return x; };
    SemStep<Value> mapped = ext_map<Value, Value>(step, id);
    if (!mapped.action.equals(step.action)) return fail("action changed");
    for (const Value& d : responses)
      if (!mapped.then(d).equals(step.then(d)))
        return fail("continuation changed at a response");
    return ok();
  });

  check(out, "map-composition", [&]() -> Verdict {
    std::function<std::uint64_t(const Value&)> g = [](const Value& x) {
      return x.as_nat() * 3;
    };
    std::function<std::uint64_t(const std::uint64_t&)> f =
        [](const std::uint64_t& n) { return n + 11; };
    SemStep<std::uint64_t> lhs = ext_map<std::uint64_t, std::uint64_t>(
        ext_map<Value, std::uint64_t>(step, g), f);
    std::function<std::uint64_t(const Value&)> fg = [f, g](const Value& x) {
      return f(g(x));
    };
    SemStep<std::uint64_t> rhs = ext_map<Value, std::uint64_t>(step, fg);
    if (!lhs.action.equals(rhs.action)) return fail("actions differ");
    for (const Value& d : responses)
      if (lhs.then(d) != rhs.then(d))
        return fail("continuations differ at a response");
    return ok();
  });
  return out;
}

// --------------------------------------------------------------------------
// choice: the step-repackaging isomorphisms, exhaustive on the finite system
// --------------------------------------------------------------------------

Checks suite_choice(const LawParams& p) {
  Checks out;
  InteractionSystem w = w_finite();
  InteractionSystem c = compose_is(w, w);
  InteractionSystem d = dual(w);
  const Budget budget = p.budget;

  for (std::uint64_t s = 0; s < 2; ++s) {
    Value i = Value::nat(s);
    std::string tag = "state-" + std::to_string(s);

    check(out, "flat-roundtrip-" + tag, [&]() -> Verdict {
      for (const Value& a : c.actions(i).exhaust(64)) {
        SemStep<Value> flat;
        flat.action = a;
        flat.then = [](const Value& r) { return Value::pair(r, Value::nat(99)); };
        SemStep<SemStep<Value>> nested = ac_backward(w, w, i, flat);
        SemStep<Value> flat2 = ac_forward(w, w, i, nested);
        if (!approx_equal(flat2.action, a, budget))
          return fail("action changed by the round trip");
        for (const Value& r : c.responses(i, a).exhaust(64))
          if (!flat2.then(r).equals(flat.then(r)))
            return fail("continuation changed by the round trip");
      }
      return ok();
    });

    check(out, "nested-roundtrip-" + tag, [&]() -> Verdict {
      for (const Value& a1 : w.actions(i).exhaust(64)) {
        Enumeration follow = Enumeration::fn_space(
            w.responses(i, a1),
            [&w, i, a1](const Value& d1) {
              return w.actions(w.next(i, a1, d1));
            },
            kDefaultBudget);
        for (const Value& y : follow.exhaust(64)) {
          SemStep<SemStep<Value>> nested;
          nested.action = a1;
          nested.then = [y](const Value& d1) {
            SemStep<Value> inner;
            inner.action = y.apply(d1);
            inner.then = [d1](const Value& d2) { return Value::pair(d1, d2); };
            return inner;
          };
          SemStep<Value> flat = ac_forward(w, w, i, nested);
          SemStep<SemStep<Value>> nested2 = ac_backward(w, w, i, flat);
          if (!nested2.action.equals(a1)) return fail("outer action changed");
          for (const Value& d1 : w.responses(i, a1).exhaust(64)) {
            SemStep<Value> inner2 = nested2.then(d1);
            if (!inner2.action.equals(y.apply(d1)))
              return fail("inner action changed");
            Value mid = w.next(i, a1, d1);
            for (const Value& d2 : w.responses(mid, inner2.action).exhaust(64))
              if (!inner2.then(d2).equals(Value::pair(d1, d2)))
                return fail("payload changed");
          }
        }
      }
      return ok();
    });

    check(out, "dual-roundtrip-" + tag, [&]() -> Verdict {
      for (const Value& cf : d.actions(i).exhaust(64)) {
        SemStep<Value> step;
        step.action = cf;
        step.then = [](const Value& a) { return Value::pair(a, a); };
        Value table = dual_ac_forward(w, i, step);
        SemStep<Value> step2 = dual_ac_backward(w, i, table);
        if (!approx_equal(step2.action, cf, budget))
          return fail("choice function changed by the round trip");
        for (const Value& a : w.actions(i).exhaust(64)) {
          if (!step2.then(a).equals(step.then(a)))
            return fail("continuation changed by the round trip");
          Value row = table.apply(a);
          if (!row.first().equals(cf.apply(a)))
            return fail("table row carries the wrong response");
          if (!row.second().equals(step.then(a)))
            return fail("table row carries the wrong continuation");
        }
      }
      return ok();
    });
  }
  return out;
}

// --------------------------------------------------------------------------
// compose: sequential composition of systems, counted against the formula
// --------------------------------------------------------------------------

Checks suite_compose(const LawParams& p) {
  Checks out;
  (void)p;
  InteractionSystem w = w_finite();
  InteractionSystem c = compose_is(w, w);
  const std::vector<std::size_t> pinned = {3, 2};

  for (std::uint64_t s = 0; s < 2; ++s) {
    Value i = Value::nat(s);
    std::string tag = "state-" + std::to_string(s);

    check(out, "action-count-" + tag, [&]() -> Verdict {
      std::size_t expected = 0;
      for (const Value& a1 : w.actions(i).exhaust(64)) {
        std::size_t prod = 1;
        for (const Value& d1 : w.responses(i, a1).exhaust(64))
          prod *= w.actions(w.next(i, a1, d1)).exhaust(64).size();
        expected += prod;
      }
      std::vector<Value> actions = c.actions(i).exhaust(256);
      std::set<Bytes> distinct;
      for (const Value& a : actions) distinct.insert(a.encode(Budget{64}));
      if (actions.size() != expected)
        return fail("enumerated " + std::to_string(actions.size()) +
                     " composite actions, the sum-of-products formula gives " +
                     std::to_string(expected));
      if (distinct.size() != actions.size())
        return fail("composite action enumeration repeats elements");
      if (expected != pinned[s])
        return fail("formula gives " + std::to_string(expected) +
                     ", expected " + std::to_string(pinned[s]));
      return ok();
    });

    check(out, "response-shape-" + tag, [&]() -> Verdict {
      for (const Value& a : c.actions(i).exhaust(64)) {
        Value a1 = a.first();
        Value f = a.second();
        std::vector<Bytes> expected;
        for (const Value& d1 : w.responses(i, a1).exhaust(64)) {
          Value mid = w.next(i, a1, d1);
          for (const Value& d2 : w.responses(mid, f.apply(d1)).exhaust(64))
            expected.push_back(Value::pair(d1, d2).encode(Budget{64}));
        }
        std::vector<Bytes> got;
        for (const Value& r : c.responses(i, a).exhaust(64))
          got.push_back(r.encode(Budget{64}));
        std::sort(expected.begin(), expected.end());
        std::sort(got.begin(), got.end());
        if (expected != got)
          return fail("composite responses differ from the paired sets");
      }
      return ok();
    });

    check(out, "next-coherence-" + tag, [&]() -> Verdict {
      for (const Value& a : c.actions(i).exhaust(64)) {
        Value a1 = a.first();
        Value f = a.second();
        for (const Value& r : c.responses(i, a).exhaust(64)) {
          Value d1 = r.first();
          Value d2 = r.second();
          Value mid = w.next(i, a1, d1);
          Value direct = w.next(mid, f.apply(d1), d2);
          if (!c.next(i, a, r).equals(direct))
            return fail("composite next disagrees with stepping twice");
        }
      }
      return ok();
    });
  }

  check(out, "hom-shape", [&]() -> Verdict {
    InteractionSystem h = hom(w, w);
    Value ii = hom_state(Value::nat(0), Value::nat(0));
    std::size_t expected = 0;
    for (const Value& f : Enumeration::fn_space(
             w.actions(Value::nat(0)),
             [&w](const Value&) { return w.actions(Value::nat(0)); },
             kDefaultBudget)
             .exhaust(64)) {
      std::size_t prod = 1;
      for (const Value& a2 : w.actions(Value::nat(0)).exhaust(64)) {
        std::size_t d1n =
            w.responses(Value::nat(0), f.apply(a2)).exhaust(64).size();
        std::size_t d2n = w.responses(Value::nat(0), a2).exhaust(64).size();
        std::size_t pw = 1;
        for (std::size_t k = 0; k < d1n; ++k) pw *= d2n;
        prod *= pw;
      }
      expected += prod;
    }
    std::vector<Value> actions = h.actions(ii).exhaust(256);
    if (actions.size() != expected)
      return fail("enumerated " + std::to_string(actions.size()) +
                   " paired translators, the formula gives " +
                   std::to_string(expected));
    for (const Value& a : actions) {
      Value f = a.first();
      Value phi = a.second();
      for (const Value& r : h.responses(ii, a).exhaust(64)) {
        Value a2 = r.first();
        Value d1 = r.second();
        Value n1 = w.next(Value::nat(0), f.apply(a2), d1);
        Value n2 = w.next(Value::nat(0), a2, phi.apply(a2).apply(d1));
        if (!h.next(ii, a, r).equals(hom_state(n1, n2)))
          return fail("paired next disagrees with stepping each side");
      }
    }
    return ok();
  });
  return out;
}

// --------------------------------------------------------------------------
// duality: role swap counted, stepped, and wired to its base
// --------------------------------------------------------------------------

Checks suite_duality(const LawParams& p) {
  Checks out;
  (void)p;
  InteractionSystem w = w_finite();
  InteractionSystem d = dual(w);

  for (std::uint64_t s = 0; s < 2; ++s) {
    Value i = Value::nat(s);
    std::string tag = "state-" + std::to_string(s);

    check(out, "action-count-" + tag, [&]() -> Verdict {
      std::size_t expected = 1;
      for (const Value& a : w.actions(i).exhaust(64))
        expected *= w.responses(i, a).exhaust(64).size();
      std::vector<Value> actions = d.actions(i).exhaust(256);
      std::set<Bytes> distinct;
      for (const Value& cf : actions) distinct.insert(cf.encode(Budget{64}));
      if (actions.size() != expected || distinct.size() != expected)
        return fail("enumerated " + std::to_string(actions.size()) +
                     " choice functions, the product formula gives " +
                     std::to_string(expected));
      if (expected != 2)
        return fail("product formula gives " + std::to_string(expected) +
                     ", expected 2");
      return ok();
    });

    check(out, "response-set-" + tag, [&]() -> Verdict {
      std::vector<Value> base_actions = w.actions(i).exhaust(64);
      for (const Value& cf : d.actions(i).exhaust(64)) {
        std::vector<Value> resp = d.responses(i, cf).exhaust(64);
        if (resp.size() != base_actions.size())
          return fail("response set is not the base action set");
        for (std::size_t k = 0; k < resp.size(); ++k)
          if (!resp[k].equals(base_actions[k]))
            return fail("response set is not the base action set");
      }
      return ok();
    });

    check(out, "next-coherence-" + tag, [&]() -> Verdict {
      for (const Value& cf : d.actions(i).exhaust(64))
        for (const Value& a : w.actions(i).exhaust(64))
          if (!d.next(i, cf, a).equals(w.next(i, a, cf.apply(a))))
            return fail("role-swapped next disagrees with the base step");
      return ok();
    });
  }

  check(out, "base-pointer", [&]() -> Verdict {
    if (d.dual_base == nullptr) return fail("no base recorded");
    if (d.dual_base->name != w.name) return fail("base records the wrong system");
    return ok();
  });

  check(out, "fixture-bases", [&]() -> Verdict {
    for (const BehaviorEntry& e : behavior_registry()) {
      Behavior b = e.make(1);
      if (b.system().dual_base == nullptr)
        return fail(e.name + " does not run over a recorded dual");
      if (b.system().dual_base->name != e.over)
        return fail(e.name + " runs over the dual of " +
                     b.system().dual_base->name + ", registered over " + e.over);
    }
    return ok();
  });
  return out;
}

// --------------------------------------------------------------------------
// freemonad: request trees, paths, endpoints, folding, grafting
// --------------------------------------------------------------------------

Checks suite_freemonad(const LawParams& p) {
  Checks out;
  InteractionSystem w = w_finite();
  InteractionSystem sw = star(w);
  Value i0 = Value::nat(0);
  const Budget budget = p.budget;

  check(out, "unit-paths", [&]() -> Verdict {
    Value t = fm_unit(Value::nat(5));
    std::vector<Value> paths = star_paths(w, i0, t).exhaust(8);
    if (paths.size() != 1 || !path_is_done(paths[0]))
      return fail("a bare payload should admit exactly the empty path");
    if (!star_next(w, i0, t, paths[0]).equals(i0))
      return fail("the empty path should stay at the root state");
    if (!leaf_at(w, i0, t, paths[0]).equals(Value::nat(5)))
      return fail("payload lost");
    return ok();
  });

  check(out, "request-step", [&]() -> Verdict {
    for (const Value& a : w.actions(i0).exhaust(16)) {
      Value t = wft_request(w, i0, a);
      std::vector<Value> responses = w.responses(i0, a).exhaust(16);
      std::vector<Value> paths = star_paths(w, i0, t).exhaust(16);
      if (paths.size() != responses.size())
        return fail("one-step request should have one path per response");
      for (const Value& pth : paths) {
        Value d = pth.first();
        if (!path_is_done(pth.second()))
          return fail("one-step request path should end after one step");
        if (!star_next(w, i0, t, pth).equals(w.next(i0, a, d)))
          return fail("endpoint disagrees with a single step");
      }
    }
    return ok();
  });

  check(out, "paths-count-leaves", [&]() -> Verdict {
    for (std::uint64_t s = 0; s < 2; ++s) {
      Value i = Value::nat(s);
      std::vector<Value> trees = sw.actions(i).take(9);
      if (trees.size() < 3) return fail("tree enumeration came up short");
      for (const Value& t : trees) {
        std::size_t paths = star_paths(w, i, t).exhaust(1024).size();
        if (paths != leaf_count(w, i, t))
          return fail("path count differs from leaf count");
      }
    }
    return ok();
  });

  check(out, "fold-structure", [&]() -> Verdict {
    // node(action 0) with: response 0 -> payload 3, response 1 -> a further
    // request at the reached state whose leaves carry d+1.
    auto inner = [&](const Value&) {
      return wft_node(w, Value::nat(1), Value::nat(0),
                      [](const Value& d) { return wft_leaf(Value::nat(d.as_nat() + 1)); });
    };
    Value t = wft_node(w, i0, Value::nat(0), [&](const Value& d) {
      if (d.as_nat() == 0) return wft_leaf(Value::nat(3));
      return inner(d);
    });
    std::function<std::uint64_t(const Value&, const Value&)> leaf =
        [](const Value&, const Value& payload) { return payload.as_nat(); };
    std::function<std::uint64_t(const Value&, const SemStep<std::uint64_t>&)>
        node = [&w](const Value& st, const SemStep<std::uint64_t>& step) {
          std::uint64_t total = 0;
          for (const Value& d : w.responses(st, step.action).exhaust(16))
            total += step.then(d);
          return total;
        };
    std::uint64_t sum = fm_fold<std::uint64_t>(w, i0, t, leaf, node);
    if (sum != 3 + 1 + 2) return fail("payload fold over the tree is wrong");
    if (leaf_count(w, i0, t) != 3) return fail("leaf count is wrong");
    if (star_paths(w, i0, t).exhaust(16).size() != 3)
      return fail("path count is wrong");
    return ok();
  });

  // A two-level tree-of-trees used by several checks below.
  auto sample_nested = [&]() -> Value {
    Value shape = wft_request(w, i0, Value::nat(0));
    auto deep = [&](const Value&) {
      Value shape2 = wft_request(w, Value::nat(1), Value::nat(0));
      return wft_node(sw, Value::nat(1), shape2, [](const Value& p2) {
        return wft_leaf(Value::nat(20 + p2.first().as_nat()));
      });
    };
    return wft_node(sw, i0, shape, [&, deep](const Value& pth) {
      if (pth.first().as_nat() == 0) return wft_leaf(Value::nat(10));
      return deep(pth);
    });
  };

  check(out, "graft-leaf", [&]() -> Verdict {
    Value t2 = wft_leaf(Value::nat(42));
    if (!approx_equal(graft(w, i0, t2), t2, budget))
      return fail("flattening a bare payload should be the identity");
    return ok();
  });

  check(out, "graft-unit-left", [&]() -> Verdict {
    // A node whose label is the empty shape has exactly one child; the
    // flattening equals the flattening of that child.
    Value t = sample_nested();
    Value flat_t = graft(w, i0, t);
    Value t2 = wft_node(sw, i0, wft_leaf(Value::unit()),
                        [t](const Value&) { return t; });
    if (!approx_equal(graft(w, i0, t2), flat_t, budget))
      return fail("an empty-shape wrapper changed the flattening");
    return ok();
  });

  check(out, "graft-unit-right", [&]() -> Verdict {
    // Grafting a bare payload onto every leaf of a shape returns the shape.
    Value shape = graft(w, i0, sample_nested());
    Value t2 = wft_node(sw, i0, shape, [&, shape](const Value& pth) {
      return wft_leaf(leaf_at(w, i0, shape, pth));
    });
    if (!approx_equal(graft(w, i0, t2), shape, budget))
      return fail("grafting bare payloads changed the shape");
    return ok();
  });

  check(out, "graft-roundtrip", [&]() -> Verdict {
    std::vector<Value> cases;
    cases.push_back(sample_nested());
    for (std::size_t k = 0; k < p.samples; ++k)
      cases.push_back(random_tree(sw, i0, p.seed + k, 2));
    for (const Value& t2 : cases) {
      Value flat = graft(w, i0, t2);
      std::size_t flat_paths = 0;
      for (const Value& q : star_paths(w, i0, flat).exhaust(4096)) {
        ++flat_paths;
        Value nested = graft_path_forward(w, i0, t2, q);
        Value back = graft_path_backward(w, i0, t2, nested);
        if (!back.equals(q)) return fail("path translation does not invert");
        if (!star_next(sw, i0, t2, nested).equals(star_next(w, i0, flat, q)))
          return fail("endpoints disagree across the translation");
        if (!leaf_at(sw, i0, t2, nested).equals(leaf_at(w, i0, flat, q)))
          return fail("payloads disagree across the translation");
      }
      if (flat_paths != leaf_count(sw, i0, t2))
        return fail("flattening changed the number of leaves");
    }
    return ok();
  });
  return out;
}

// --------------------------------------------------------------------------
// simulation: identity, composition, counit, generalization
// --------------------------------------------------------------------------

Checks suite_simulation(const LawParams& p) {
  Checks out;
  const std::size_t sd = p.stream_depth;
  const std::size_t td = p.tree_depth;
  const Budget budget = p.budget;
  const Value u = Value::unit();
  Behavior nat = nat_stream();
  Behavior heap = heap_bin();

  check(out, "id-stream", [&]() -> Verdict {
    return expect_bisim(eval_linear(sim_id(w_stream()), u, u, nat), nat, sd,
                        budget);
  });
  check(out, "id-tree", [&]() -> Verdict {
    return expect_bisim(eval_linear(sim_id(w_bintree()), u, u, heap), heap, td,
                        budget);
  });
  check(out, "id-finite", [&]() -> Verdict {
    Behavior walk = fin_walk();
    return expect_bisim(eval_linear(sim_id(w_finite()), walk.state(), u, walk),
                        walk, sd, budget);
  });

  check(out, "compose-eval-stream", [&]() -> Verdict {
    Behavior composite =
        eval_linear(sim_compose(sim_succ(), sim_double()), u,
                    compose_witness(u, u, u), nat);
    Behavior nested = eval_linear(sim_succ(), u, u,
                                  eval_linear(sim_double(), u, u, nat));
    return expect_bisim(composite, nested, sd, budget);
  });
  check(out, "compose-eval-tree", [&]() -> Verdict {
    Behavior composite =
        eval_linear(sim_compose(sim_mirror(), sim_mirror()), u,
                    compose_witness(u, u, u), heap);
    Behavior nested = eval_linear(sim_mirror(), u, u,
                                  eval_linear(sim_mirror(), u, u, heap));
    return expect_bisim(composite, nested, td, budget);
  });
  check(out, "mirror-involution", [&]() -> Verdict {
    Behavior twice = eval_linear(sim_mirror(), u, u,
                                 eval_linear(sim_mirror(), u, u, heap));
    return expect_bisim(twice, heap, td, budget);
  });
  check(out, "compose-id-left", [&]() -> Verdict {
    Behavior composite =
        eval_linear(sim_compose(sim_id(w_stream()), sim_succ()), u,
                    compose_witness(u, u, u), nat);
    return expect_bisim(composite, eval_linear(sim_succ(), u, u, nat), sd,
                        budget);
  });
  check(out, "compose-id-right", [&]() -> Verdict {
    Behavior composite =
        eval_linear(sim_compose(sim_succ(), sim_id(w_stream())), u,
                    compose_witness(u, u, u), nat);
    return expect_bisim(composite, eval_linear(sim_succ(), u, u, nat), sd,
                        budget);
  });

  check(out, "counit-eval-stream", [&]() -> Verdict {
    Behavior lifted = to_star_behavior(w_stream(), nat);
    return expect_bisim(eval_linear(epsilon(w_stream()), u, u, lifted), nat, sd,
                        budget);
  });
  check(out, "counit-eval-tree", [&]() -> Verdict {
    Behavior lifted = to_star_behavior(w_bintree(), heap);
    return expect_bisim(eval_linear(epsilon(w_bintree()), u, u, lifted), heap,
                        td, budget);
  });

  check(out, "generalize-agrees-stream", [&]() -> Verdict {
    return expect_bisim(eval_general(generalize(sim_succ()), u, u, nat),
                        eval_linear(sim_succ(), u, u, nat), sd, budget);
  });
  check(out, "generalize-agrees-tree", [&]() -> Verdict {
    return expect_bisim(eval_general(generalize(sim_mirror()), u, u, heap),
                        eval_linear(sim_mirror(), u, u, heap), td, budget);
  });
  return out;
}

// --------------------------------------------------------------------------
// comonad: counit and co-extension laws at the evaluation level
// --------------------------------------------------------------------------

Checks suite_comonad(const LawParams& p) {
  Checks out;
  const std::size_t sd = p.stream_depth;
  const std::size_t td = p.tree_depth;
  const Budget budget = p.budget;
  const Value u = Value::unit();
  InteractionSystem ws = w_stream();
  InteractionSystem wb = w_bintree();
  Behavior nat = nat_stream();
  Behavior heap = heap_bin();

  check(out, "counit-stream", [&]() -> Verdict {
    return expect_bisim(eval_general(epsilon_general(ws), u, u, nat), nat, sd,
                        budget);
  });
  check(out, "counit-tree", [&]() -> Verdict {
    return expect_bisim(eval_general(epsilon_general(wb), u, u, heap), heap, td,
                        budget);
  });

  check(out, "cobind-counit-stream", [&]() -> Verdict {
    Behavior lifted = to_star_behavior(ws, nat);
    Behavior round = from_star_behavior(
        ws, eval_linear(cobind(epsilon_general(ws)), u, u, lifted));
    return expect_bisim(round, nat, sd, budget);
  });
  check(out, "cobind-counit-tree", [&]() -> Verdict {
    Behavior lifted = to_star_behavior(wb, heap);
    Behavior round = from_star_behavior(
        wb, eval_linear(cobind(epsilon_general(wb)), u, u, lifted));
    return expect_bisim(round, heap, td, budget);
  });

  check(out, "counit-after-cobind-stream", [&]() -> Verdict {
    GeneralSim r = sim_sumblock();
    Behavior lifted = to_star_behavior(ws, nat);
    Behavior lhs = eval_linear(sim_compose(epsilon(ws), cobind(r)), u,
                               compose_witness(u, u, u), lifted);
    Behavior rhs = eval_general(r, u, u, nat);
    return expect_bisim(lhs, rhs, sd, budget);
  });
  check(out, "counit-after-cobind-tree", [&]() -> Verdict {
    GeneralSim r = generalize(sim_mirror());
    Behavior lifted = to_star_behavior(wb, heap);
    Behavior lhs = eval_linear(sim_compose(epsilon(wb), cobind(r)), u,
                               compose_witness(u, u, u), lifted);
    Behavior rhs = eval_general(r, u, u, heap);
    return expect_bisim(lhs, rhs, td, budget);
  });

  check(out, "cobind-assoc-stream", [&]() -> Verdict {
    GeneralSim r = sim_sumblock();
    GeneralSim s = generalize(sim_succ());
    Behavior lifted = to_star_behavior(ws, nat);
    Behavior lhs = from_star_behavior(
        ws, eval_linear(cobind(bullet(r, s)), u, compose_witness(u, u, u),
                        lifted));
    Behavior rhs = from_star_behavior(
        ws, eval_linear(sim_compose(cobind(r), cobind(s)), u,
                        compose_witness(u, u, u), lifted));
    return expect_bisim(lhs, rhs, sd, budget);
  });
  check(out, "cobind-assoc-tree", [&]() -> Verdict {
    GeneralSim r = generalize(sim_mirror());
    GeneralSim s = generalize(sim_mirror());
    Behavior lifted = to_star_behavior(wb, heap);
    Behavior lhs = from_star_behavior(
        wb, eval_linear(cobind(bullet(r, s)), u, compose_witness(u, u, u),
                        lifted));
    Behavior rhs = from_star_behavior(
        wb, eval_linear(sim_compose(cobind(r), cobind(s)), u,
                        compose_witness(u, u, u), lifted));
    return expect_bisim(lhs, rhs, td, budget);
  });

  check(out, "bullet-vs-nested-eval", [&]() -> Verdict {
    GeneralSim r = sim_sumblock();
    GeneralSim s = generalize(sim_succ());
    Behavior lhs =
        eval_general(bullet(r, s), u, compose_witness(u, u, u), nat);
    Behavior rhs = eval_general(r, u, u, eval_general(s, u, u, nat));
    return expect_bisim(lhs, rhs, sd, budget);
  });

  check(out, "duplicate-flattens", [&]() -> Verdict {
    InteractionSystem w = w_finite();
    InteractionSystem sw = star(w);
    Value i0 = Value::nat(0);
    Value t2 = random_tree(sw, i0, p.seed, 2);
    SimStep st = delta(w).rho(i0, i0, u, t2);
    if (!approx_equal(st.action, graft(w, i0, t2), budget))
      return fail("requested tree is not the flattening");
    for (const Value& q : star_paths(w, i0, st.action).exhaust(4096)) {
      auto [translated, witness] = st.then(q);
      (void)witness;
      if (!translated.equals(graft_path_forward(w, i0, t2, q)))
        return fail("translated path disagrees");
    }
    return ok();
  });
  return out;
}

// --------------------------------------------------------------------------
// roundtrip: the up-to-bisimulation isomorphisms
// --------------------------------------------------------------------------

Checks suite_roundtrip(const LawParams& p) {
  Checks out;
  const std::size_t sd = p.stream_depth;
  const std::size_t td = p.tree_depth;
  const Budget budget = p.budget;
  InteractionSystem ws = w_stream();
  InteractionSystem wb = w_bintree();

  check(out, "star-stream", [&]() -> Verdict {
    Behavior nat = nat_stream();
    Behavior round = from_star_behavior(ws, to_star_behavior(ws, nat));
    return expect_bisim(round, nat, sd, budget);
  });
  check(out, "star-stream-seeded", [&]() -> Verdict {
    for (std::size_t k = 0; k < p.samples; ++k) {
      Behavior b = rand_stream(p.seed + k);
      Verdict v = expect_bisim(from_star_behavior(ws, to_star_behavior(ws, b)),
                               b, sd, budget);
      if (!v.first) return v;
    }
    return ok();
  });
  check(out, "star-tree", [&]() -> Verdict {
    Behavior heap = heap_bin();
    Behavior round = from_star_behavior(wb, to_star_behavior(wb, heap));
    return expect_bisim(round, heap, td, budget);
  });
  check(out, "star-tree-seeded", [&]() -> Verdict {
    for (std::size_t k = 0; k < p.samples; ++k) {
      Behavior b = rand_bin(p.seed + k);
      Verdict v = expect_bisim(from_star_behavior(wb, to_star_behavior(wb, b)),
                               b, td, budget);
      if (!v.first) return v;
    }
    return ok();
  });
  check(out, "star-finite", [&]() -> Verdict {
    InteractionSystem wf = w_finite();
    Behavior walk = fin_walk();
    Behavior round = from_star_behavior(wf, to_star_behavior(wf, walk));
    return expect_bisim(round, walk, sd, budget);
  });

  check(out, "layers-stream", [&]() -> Verdict {
    Behavior nat = nat_stream();
    Behavior round =
        from_layers(nat.system(), nat.state(), to_layers(nat));
    return expect_bisim(round, nat, sd, budget);
  });
  check(out, "layers-tree", [&]() -> Verdict {
    Behavior heap = heap_bin();
    Behavior round =
        from_layers(heap.system(), heap.state(), to_layers(heap));
    return expect_bisim(round, heap, td, budget);
  });
  check(out, "layers-tree-seeded", [&]() -> Verdict {
    Behavior b = rand_bin(p.seed);
    Behavior round = from_layers(b.system(), b.state(), to_layers(b));
    return expect_bisim(round, b, td, budget);
  });

  check(out, "dd-stream", [&]() -> Verdict {
    Behavior nat = nat_stream();
    Behavior round = dd_unwrap(nat.system(), dd_wrap(nat));
    return expect_bisim(round, nat, sd, budget);
  });
  check(out, "dd-layered-stream", [&]() -> Verdict {
    Behavior nat = nat_stream();
    InteractionSystem lay = layered(nat.system(), nat.state());
    Behavior y = to_layers(nat);
    Behavior round = dd_unwrap(lay, dd_wrap(y));
    return expect_bisim(round, y, p.layers, budget);
  });
  check(out, "dd-layered-tree", [&]() -> Verdict {
    Behavior heap = heap_bin();
    InteractionSystem lay = layered(heap.system(), heap.state());
    Behavior y = to_layers(heap);
    Behavior round = dd_unwrap(lay, dd_wrap(y));
    return expect_bisim(round, y, p.layers, budget);
  });
  return out;
}

// --------------------------------------------------------------------------
// eating: postconditions of matching a finite request tree against a behavior
// --------------------------------------------------------------------------

Checks suite_eating(const LawParams& p) {
  Checks out;
  const Budget budget = p.budget;

  struct Case {
    std::string name;
    InteractionSystem w;
    Behavior input;
    std::size_t depth;
  };
  std::vector<Case> cases;
  cases.push_back({"stream-counting", w_stream(), nat_stream(), p.stream_depth});
  cases.push_back({"stream-seeded", w_stream(), rand_stream(p.seed),
                   p.stream_depth});
  cases.push_back({"increasing", w_increasing(), inc_stream(), p.stream_depth});
  cases.push_back({"tree-heap", w_bintree(), heap_bin(), p.tree_depth});
  cases.push_back({"tree-seeded", w_bintree(), rand_bin(p.seed), p.tree_depth});
  cases.push_back({"finite-walk", w_finite(), fin_walk(), p.stream_depth});

  for (const Case& c : cases) {
    check(out, c.name, [&]() -> Verdict {
      for (std::size_t k = 0; k < p.samples; ++k) {
        Value t = random_tree(c.w, c.input.state(), p.seed + 100 + k, 4);
        EatResult res = eat(c.w, c.input.state(), t, c.input);
        if (!res.payload.equals(leaf_at(c.w, c.input.state(), t, res.path)))
          return fail("payload is not the leaf the path reaches");
        Value end = star_next(c.w, c.input.state(), t, res.path);
        if (!res.residual.state().equals(end))
          return fail("residual state is not the path endpoint");
        // Re-walk the tree, demanding the recorded answers step for step.
        Behavior cur = c.input;
        Value node = t;
        Value pth = res.path;
        while (!wft_is_leaf(node)) {
          Value a = wft_action(node);
          Unfolding uf = cur.unfold();
          Value d = uf.action.apply(a);
          if (!pth.first().equals(d))
            return fail("recorded path diverges from the input's answers");
          cur = uf.next(a);
          node = wft_child(node, d);
          pth = pth.second();
        }
        if (!path_is_done(pth)) return fail("path longer than the walk");
        Verdict v = expect_bisim(res.residual, cur, c.depth, budget);
        if (!v.first) return v;
      }
      return ok();
    });
  }

  check(out, "leaf-eats-nothing", [&]() -> Verdict {
    Behavior nat = nat_stream();
    EatResult res = eat(w_stream(), nat.state(), fm_unit(Value::nat(7)), nat);
    if (!res.payload.equals(Value::nat(7))) return fail("payload changed");
    if (!path_is_done(res.path)) return fail("path should be empty");
    return expect_bisim(res.residual, nat, p.stream_depth, budget);
  });
  return out;
}

// --------------------------------------------------------------------------
// layering: positions, growth, the layered system, and layered evaluation
// --------------------------------------------------------------------------

Checks suite_layering(const LawParams& p) {
  Checks out;
  const Budget budget = p.budget;
  const Value u = Value::unit();

  check(out, "positions-and-growth", [&]() -> Verdict {
    InteractionSystem v = w_finite();
    Value root = Value::nat(0);
    InteractionSystem lay = layered(v, root);
    Value t0 = layer_leaf();
    std::vector<Value> pos0 = sharp_positions(v, root, t0).exhaust(16);
    if (pos0.size() != 1 || !path_is_done(pos0[0]))
      return fail("the empty tree should have exactly the root position");
    if (!sharp_next(v, root, t0, pos0[0]).equals(root))
      return fail("the root position should sit at the root state");
    std::vector<Value> fns = lay.actions(t0).exhaust(16);
    if (fns.size() != 2)
      return fail("one position with two actions should give two layers");
    for (const Value& l : fns) {
      Value t1 = layer_grow(t0, l);
      if (!approx_equal(lay.next(t0, l, u), t1, budget))
        return fail("growing disagrees with the layered step");
      std::size_t expected = 0;
      for (const Value& beta : pos0)
        expected += v.responses(root, l.apply(beta)).exhaust(16).size();
      std::vector<Value> pos1 = sharp_positions(v, root, t1).exhaust(16);
      if (pos1.size() != expected)
        return fail("grown positions do not match the response count");
      for (const Value& beta1 : pos1) {
        Value beta = beta1.first();
        Value d = beta1.second();
        Value direct = v.next(sharp_next(v, root, t0, beta), l.apply(beta), d);
        if (!sharp_next(v, root, t1, beta1).equals(direct))
          return fail("grown position reaches the wrong state");
      }
      std::vector<Value> resp = lay.responses(t0, l).exhaust(16);
      if (resp.size() != 1 || !resp[0].equals(u))
        return fail("a layered step should have the single trivial response");
    }
    return ok();
  });

  check(out, "layersum-heap", [&]() -> Verdict {
    Behavior outb = eval_layered(sim_layersum(), u, heap_bin());
    std::vector<std::uint64_t> want = oracle_layer_sums(heap_edge_label,
                                                        p.layers);
    return expect_nats(outb, want);
  });
  check(out, "layersum-seeded", [&]() -> Verdict {
    for (std::size_t k = 0; k < p.samples; ++k) {
      std::uint64_t seed = p.seed + k;
      Behavior outb = eval_layered(sim_layersum(), u, rand_bin(seed));
      std::vector<std::uint64_t> want = oracle_layer_sums(
          [seed](const std::vector<int>& word) {
            return rand_bin_edge_label(seed, word);
          },
          p.layers);
      Verdict v = expect_nats(outb, want);
      if (!v.first) return v;
    }
    return ok();
  });

  check(out, "layered-id-stream", [&]() -> Verdict {
    Behavior nat = nat_stream();
    Behavior round = eval_layered(layered_id(w_stream(), u), u, nat);
    return expect_bisim(round, nat, p.stream_depth, budget);
  });
  check(out, "layered-id-tree", [&]() -> Verdict {
    Behavior heap = heap_bin();
    Behavior round = eval_layered(layered_id(w_bintree(), u), u, heap);
    return expect_bisim(round, heap, p.layers, budget);
  });
  check(out, "layered-bullet-id", [&]() -> Verdict {
    LayeredSim composite =
        layered_bullet(layered_id(w_stream(), u), sim_layersum());
    Behavior lhs = eval_layered(composite, compose_witness(layer_leaf(), u, u),
                                heap_bin());
    std::vector<std::uint64_t> want = oracle_layer_sums(heap_edge_label,
                                                        p.layers);
    return expect_nats(lhs, want);
  });
  return out;
}

// --------------------------------------------------------------------------
// oracle: evaluation output against direct cursor arithmetic
// --------------------------------------------------------------------------

Checks suite_oracle(const LawParams& p) {
  Checks out;
  const Value u = Value::unit();
  auto identity = [](std::uint64_t k) { return k; };

  check(out, "sumblock-counting", [&]() -> Verdict {
    Behavior outb = eval_general(sim_sumblock(), u, u, nat_stream());
    return expect_nats(outb, oracle_sumblock(identity, 5));
  });
  check(out, "sumblock-zeros", [&]() -> Verdict {
    auto zero = [](std::uint64_t) { return std::uint64_t{0}; };
    Behavior outb = eval_general(sim_sumblock(), u, u, zeros_stream());
    return expect_nats(outb, oracle_sumblock(zero, 8));
  });
  check(out, "sumblock-seeded", [&]() -> Verdict {
    for (std::size_t k = 0; k < p.samples; ++k) {
      std::uint64_t seed = p.seed + k;
      Behavior outb = eval_general(sim_sumblock(), u, u, rand_stream(seed));
      Verdict v =
          expect_nats(outb, oracle_sumblock(rand_stream_elements(seed), 8));
      if (!v.first) return v;
    }
    return ok();
  });
  check(out, "map-succ", [&]() -> Verdict {
    Behavior outb = eval_linear(sim_succ(), u, u, nat_stream());
    auto succ = [](std::uint64_t n) { return n + 1; };
    return expect_nats(outb, oracle_map(identity, succ, p.stream_depth));
  });
  check(out, "map-double-seeded", [&]() -> Verdict {
    for (std::size_t k = 0; k < p.samples; ++k) {
      std::uint64_t seed = p.seed + 50 + k;
      Behavior outb = eval_linear(sim_double(), u, u, rand_stream(seed));
      auto twice = [](std::uint64_t n) { return 2 * n; };
      Verdict v = expect_nats(
          outb, oracle_map(rand_stream_elements(seed), twice, p.stream_depth));
      if (!v.first) return v;
    }
    return ok();
  });
  check(out, "id-seeded", [&]() -> Verdict {
    for (std::size_t k = 0; k < p.samples; ++k) {
      std::uint64_t seed = p.seed + 90 + k;
      Behavior in = rand_stream(seed);
      Behavior outb = eval_linear(sim_id(w_stream()), u, u, in);
      Verdict v = expect_nats(
          outb, oracle_map(rand_stream_elements(seed), identity,
                           p.stream_depth));
      if (!v.first) return v;
    }
    return ok();
  });
  check(out, "increasing-floor", [&]() -> Verdict {
    auto succ = [](std::uint64_t n) { return n + 1; };
    return expect_nats(inc_stream(),
                       oracle_map(identity, succ, p.stream_depth));
  });
  return out;
}

// --------------------------------------------------------------------------
// shape: query counts, chains, laziness, and layer completion
// --------------------------------------------------------------------------

Checks suite_shape(const LawParams& p) {
  Checks out;
  const Value u = Value::unit();
  constexpr std::size_t kReadFuel = 10000;

  check(out, "sumblock-reads", [&]() -> Verdict {
    ShapeReport report = stream_transducer_shape(sim_sumblock(), nat_stream(), 5);
    std::vector<std::size_t> want = {1, 2, 4, 8, 16};
    if (report.reads_per_output != want) {
      std::vector<std::uint64_t> got(report.reads_per_output.begin(),
                                     report.reads_per_output.end());
      return fail("reads per output = " + show_nats(got));
    }
    if (!report.chain_ok) return fail("queries did not form one chain");
    for (std::size_t reads : report.reads_per_output)
      if (reads > kReadFuel) return fail("read fuel exceeded");
    return ok();
  });
  check(out, "map-reads", [&]() -> Verdict {
    ShapeReport report = stream_transducer_shape(generalize(sim_succ()),
                                                 nat_stream(), 5);
    std::vector<std::size_t> want(5, 1);
    if (report.reads_per_output != want)
      return fail("a one-for-one transducer should read once per output");
    if (!report.chain_ok) return fail("queries did not form one chain");
    return ok();
  });
  check(out, "map-reads-seeded", [&]() -> Verdict {
    ShapeReport report = stream_transducer_shape(generalize(sim_double()),
                                                 rand_stream(p.seed), 5);
    std::vector<std::size_t> want(5, 1);
    if (report.reads_per_output != want)
      return fail("a one-for-one transducer should read once per output");
    if (!report.chain_ok) return fail("queries did not form one chain");
    return ok();
  });

  check(out, "lazy-construction", [&]() -> Verdict {
    ProbeLog log;
    Behavior instrumented = probed(nat_stream(), log);
    Behavior general = eval_general(sim_sumblock(), u, u, instrumented);
    Behavior linear = eval_linear(sim_succ(), u, u, instrumented);
    Behavior starred = to_star_behavior(w_stream(), instrumented);
    Behavior layers = to_layers(instrumented);
    (void)general;
    (void)linear;
    (void)starred;
    (void)layers;
    if (log.count() != 0)
      return fail("construction queried the input " +
                   std::to_string(log.count()) + " times");
    Unfolding uf = general.unfold();
    (void)uf;
    if (log.count() != 0)
      return fail("unfolding alone queried the input");
    return ok();
  });

  check(out, "layered-completes-layers", [&]() -> Verdict {
    ProbeLog log;
    Behavior instrumented = probed(heap_bin(), log);
    Behavior outb = eval_layered(sim_layersum(), u, instrumented);
    if (log.count() != 0) return fail("construction queried the input");
    std::optional<std::vector<Value>> sums = take_stream(outb, p.layers);
    if (!sums.has_value()) return fail("output is not stream-shaped");
    std::vector<std::size_t> histogram = log.depth_histogram();
    std::vector<std::size_t> want;
    for (std::size_t m = 0; m < p.layers; ++m)
      want.push_back(std::size_t{1} << m);
    if (histogram != want) {
      std::vector<std::uint64_t> got(histogram.begin(), histogram.end());
      return fail("queries per depth = " + show_nats(got) +
                   ", expected one complete layer per output");
    }
    std::set<std::uint64_t> seen;
    for (const ProbeEntry& e : log.entries())
      if (!seen.insert(e.node).second)
        return fail("an input node was unfolded twice");
    return ok();
  });
  return out;
}

using SuiteFn = Checks (*)(const LawParams&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"extension", suite_extension}, {"choice", suite_choice},
      {"compose", suite_compose},     {"duality", suite_duality},
      {"freemonad", suite_freemonad}, {"simulation", suite_simulation},
      {"comonad", suite_comonad},     {"roundtrip", suite_roundtrip},
      {"eating", suite_eating},       {"layering", suite_layering},
      {"oracle", suite_oracle},       {"shape", suite_shape}};
  return table;
}

}  // namespace

const std::vector<std::string>& law_suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suite_table()) {
      (void)fn;
      out.push_back(name);
    }
    return out;
  }();
  return names;
}

std::vector<LawCheck> run_law_suite(const std::string& suite,
                                    const LawParams& params) {
  for (const auto& [name, fn] : suite_table())
    if (name == suite) return fn(params);
  throw ShapeError("unknown law suite: " + suite);
}

std::vector<LawCheck> run_all_law_suites(const LawParams& params) {
  std::vector<LawCheck> out;
  for (const auto& [name, fn] : suite_table()) {
    std::vector<LawCheck> checks = fn(params);
    for (LawCheck& c : checks) {
      c.name = name + "/" + c.name;
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace itx
