#include "itx/wftree.hpp"

#include <map>
#include <set>

namespace itx {

Value wft_leaf(Value payload) { return Value::left(std::move(payload)); }

Value wft_node(const InteractionSystem& w, const Value& state, Value action,
               std::function<Value(const Value& response)> children) {
  Enumeration domain = w.responses(state, action);
  return Value::right(
      Value::pair(std::move(action), Value::fn(std::move(children), domain)));
}

bool wft_is_leaf(const Value& tree) { return tree.kind() == Value::Kind::Left; }

Value wft_payload(const Value& tree) {
  if (!wft_is_leaf(tree)) throw ShapeError("tree node has no payload");
  return tree.inner();
}

Value wft_action(const Value& tree) {
  if (wft_is_leaf(tree)) throw ShapeError("tree leaf has no action");
  return tree.inner().first();
}

Value wft_child(const Value& tree, const Value& response) {
  if (wft_is_leaf(tree)) throw ShapeError("tree leaf has no children");
  return tree.inner().second().apply(response);
}

Value path_done() { return Value::unit(); }

Value path_step(Value response, Value rest) {
  return Value::pair(std::move(response), std::move(rest));
}

bool path_is_done(const Value& path) {
  return path.kind() == Value::Kind::Unit;
}

Value wft_request(const InteractionSystem& w, const Value& state, Value action) {
  return wft_node(w, state, std::move(action),
                  [](const Value&) -> Value { return wft_leaf(Value::unit()); });
}

Value star_next(const InteractionSystem& w, const Value& state,
                const Value& tree, const Value& path) {
  if (wft_is_leaf(tree)) {
    if (!path_is_done(path)) throw ShapeError("path continues past a leaf");
    return state;
  }
  if (path_is_done(path)) throw ShapeError("path stops at an inner node");
  Value d = path.first();
  Value action = wft_action(tree);
  return star_next(w, w.next(state, action, d), wft_child(tree, d),
                   path.second());
}

Enumeration star_paths(const InteractionSystem& w, const Value& state,
                       const Value& tree) {
  if (wft_is_leaf(tree)) return Enumeration::of({path_done()});
  Value action = wft_action(tree);
  Enumeration responses = w.responses(state, action);
  // Σ d. paths(child d), flattened into path values.
  return Enumeration::sigma(responses,
                            [w, state, action, tree](const Value& d) {
                              return star_paths(w, w.next(state, action, d),
                                                wft_child(tree, d));
                            })
      .map([](const Value& p) { return path_step(p.first(), p.second()); });
}

namespace {

/// All trees over `w` at `state` of depth at most `depth`, fully tabulated.
/// Throws BudgetError/UnavailableError when the underlying sets cannot be
/// exhausted within the per-axis budget.
std::vector<Value> trees_up_to(const InteractionSystem& w, const Value& state,
                               std::size_t depth, std::size_t per_axis) {
  std::vector<Value> out;
  out.push_back(wft_leaf(Value::unit()));
  if (depth == 0) return out;
  std::vector<Value> actions = w.actions(state).exhaust(per_axis);
  for (const Value& a : actions) {
    std::vector<Value> responses = w.responses(state, a).exhaust(per_axis);
    std::vector<std::vector<Value>> axes;
    axes.reserve(responses.size());
    for (const Value& d : responses)
      axes.push_back(trees_up_to(w, w.next(state, a, d), depth - 1, per_axis));
    // Mixed-radix walk over child choices.
    std::vector<std::size_t> idx(axes.size(), 0);
    while (true) {
      std::vector<std::pair<Value, Value>> entries;
      entries.reserve(axes.size());
      for (std::size_t k = 0; k < axes.size(); ++k)
        entries.emplace_back(responses[k], axes[k][idx[k]]);
      out.push_back(Value::right(Value::pair(a, Value::fn_table(entries))));
      std::size_t k = 0;
      for (; k < axes.size(); ++k) {
        if (++idx[k] < axes[k].size()) break;
        idx[k] = 0;
      }
      if (k == axes.size()) break;
      if (axes.empty()) break;
    }
    if (axes.empty()) {
      // No responses: the node with the empty child table was pushed once by
      // the loop above (entries empty), nothing further to vary.
    }
  }
  return out;
}

}  // namespace

InteractionSystem star(const InteractionSystem& w, std::size_t per_axis) {
  InteractionSystem out;
  out.name = w.name + "*";
  out.actions = [w, per_axis](const Value& i) -> Enumeration {
    return Enumeration::staged(
        [w, i, per_axis](std::size_t stage) -> std::optional<std::vector<Value>> {
          // Stage k emits the trees of depth exactly k (dedup by encoding).
          try {
            std::vector<Value> up_to = trees_up_to(w, i, stage, per_axis);
            std::vector<Value> fresh;
            std::set<Bytes> earlier;
            if (stage > 0) {
              for (const Value& t : trees_up_to(w, i, stage - 1, per_axis))
                earlier.insert(t.encode(Budget{per_axis}));
            }
            std::set<Bytes> seen = earlier;
            for (const Value& t : up_to) {
              Bytes enc = t.encode(Budget{per_axis});
              if (seen.insert(enc).second) fresh.push_back(t);
            }
            if (stage > 0 && fresh.empty()) return std::nullopt;  // saturated
            return fresh;
          } catch (const BudgetError& e) {
            throw UnavailableError(std::string("tree enumeration needs finite "
                                               "action/response sets: ") +
                                   e.what());
          }
        });
  };
  out.responses = [w](const Value& i, const Value& t) -> Enumeration {
    return star_paths(w, i, t);
  };
  out.next = [w](const Value& i, const Value& t, const Value& p) -> Value {
    return star_next(w, i, t, p);
  };
  return out;
}

Value fm_unit(Value payload) { return wft_leaf(std::move(payload)); }

Value fm_step(const InteractionSystem& w, const Value& state,
              const SemStep<Value>& step) {
  return wft_node(w, state, step.action, step.then);
}

namespace {

/// Splices the flattened continuation of `outer_children` onto every leaf of
/// `shape`, accumulating the path from the root of the shape.
Value splice(const InteractionSystem& w, const Value& state, const Value& shape,
             const std::function<Value(const Value& full_path)>& build,
             const std::function<Value(const Value& path)>& at_leaf) {
  if (wft_is_leaf(shape)) return at_leaf(build(path_done()));
  Value action = wft_action(shape);
  return wft_node(w, state, action,
                  [w, state, action, shape, build, at_leaf](const Value& d) {
                    auto deeper = [build, d](const Value& rest) {
                      return build(path_step(d, rest));
                    };
                    return splice(w, w.next(state, action, d),
                                  wft_child(shape, d), deeper, at_leaf);
                  });
}

/// Splits `flat` into the part consumed by `shape` plus the remainder.
std::pair<Value, Value> split_path(const InteractionSystem& w, const Value& state,
                                   const Value& shape, const Value& flat) {
  if (wft_is_leaf(shape)) return {path_done(), flat};
  if (path_is_done(flat)) throw ShapeError("path ends inside a grafted shape");
  Value d = flat.first();
  Value action = wft_action(shape);
  auto [inner, rest] = split_path(w, w.next(state, action, d),
                                  wft_child(shape, d), flat.second());
  return {path_step(d, inner), rest};
}

Value path_concat(const Value& prefix, const Value& rest) {
  if (path_is_done(prefix)) return rest;
  return path_step(prefix.first(), path_concat(prefix.second(), rest));
}

}  // namespace

Value graft(const InteractionSystem& w, const Value& state, const Value& tree2) {
  if (wft_is_leaf(tree2)) return tree2;
  Value shape = wft_action(tree2);  // itself a request tree over w
  auto id = [](const Value& p) { return p; };
  return splice(w, state, shape, id, [w, state, tree2](const Value& full) {
    return graft(w, star_next(w, state, wft_action(tree2), full),
                 wft_child(tree2, full));
  });
}

Value graft_path_forward(const InteractionSystem& w, const Value& state,
                         const Value& tree2, const Value& flat_path) {
  if (wft_is_leaf(tree2)) {
    if (!path_is_done(flat_path))
      throw ShapeError("flat path continues past the grafted tree");
    return path_done();
  }
  Value shape = wft_action(tree2);
  auto [consumed, rest] = split_path(w, state, shape, flat_path);
  Value mid = star_next(w, state, shape, consumed);
  return path_step(consumed, graft_path_forward(w, mid,
                                                wft_child(tree2, consumed), rest));
}

Value graft_path_backward(const InteractionSystem& w, const Value& state,
                          const Value& tree2, const Value& nested_path) {
  if (wft_is_leaf(tree2)) {
    if (!path_is_done(nested_path))
      throw ShapeError("nested path continues past the grafted tree");
    return path_done();
  }
  Value consumed = nested_path.first();
  Value shape = wft_action(tree2);
  Value mid = star_next(w, state, shape, consumed);
  return path_concat(consumed,
                     graft_path_backward(w, mid, wft_child(tree2, consumed),
                                         nested_path.second()));
}

EatResult eat(const InteractionSystem& w, const Value& state, const Value& tree,
              const Behavior& input) {
  if (wft_is_leaf(tree)) return EatResult{wft_payload(tree), path_done(), input};
  Value action = wft_action(tree);
  Unfolding u = input.unfold();
  Value d = u.action.apply(action);
  EatResult sub = eat(w, w.next(state, action, d), wft_child(tree, d),
                      u.next(action));
  return EatResult{sub.payload, path_step(d, sub.path), sub.residual};
}

nlohmann::json wft_to_json(const InteractionSystem& w, const Value& state,
                           const Value& tree, const Budget& budget) {
  if (wft_is_leaf(tree))
    return nlohmann::json{{"Leaf", to_hex(wft_payload(tree).encode(budget))}};
  Value action = wft_action(tree);
  Enumeration responses = w.responses(state, action);
  if (!responses.available())
    throw UnavailableError("cannot serialise node: " + responses.note());
  std::vector<Value> ds = responses.exhaust(budget.per_axis);
  nlohmann::json kids = nlohmann::json::array();
  for (const Value& d : ds) {
    kids.push_back({to_hex(d.encode(budget)),
                    wft_to_json(w, w.next(state, action, d), wft_child(tree, d),
                                budget)});
  }
  return nlohmann::json{
      {"Node", nlohmann::json::array({to_hex(action.encode(budget)), kids})}};
}

namespace {

Value value_from_encoding(const Bytes& enc) {
  // Rebuilds a first-order value from its canonical encoding. Function
  // encodings come back as tables.
  std::size_t pos = 0;
  std::function<Value()> parse = [&]() -> Value {
    if (pos >= enc.size()) throw ShapeError("truncated encoding");
    unsigned char tag = static_cast<unsigned char>(enc[pos++]);
    auto framed = [&]() -> Bytes {
      std::uint64_t len = read_uleb128(enc, pos);
      if (pos + len > enc.size()) throw ShapeError("truncated encoding frame");
      Bytes child = enc.substr(pos, static_cast<std::size_t>(len));
      pos += static_cast<std::size_t>(len);
      return child;
    };
    switch (tag) {
      case 0x00:
        return Value::unit();
      case 0x01:
        return Value::nat(read_uleb128(enc, pos));
      case 0x02: {
        Bytes a = framed();
        Bytes b = framed();
        return Value::pair(value_from_encoding(a), value_from_encoding(b));
      }
      case 0x03:
        return Value::left(value_from_encoding(framed()));
      case 0x04:
        return Value::right(value_from_encoding(framed()));
      case 0x05: {
        std::uint64_t count = read_uleb128(enc, pos);
        std::vector<std::pair<Value, Value>> entries;
        entries.reserve(static_cast<std::size_t>(count));
        for (std::uint64_t k = 0; k < count; ++k) {
          Bytes key = framed();
          Bytes val = framed();
          entries.emplace_back(value_from_encoding(key), value_from_encoding(val));
        }
        return Value::fn_table(std::move(entries));
      }
      default:
        throw ShapeError("unknown encoding tag");
    }
  };
  Value v = parse();
  if (pos != enc.size()) throw ShapeError("trailing bytes in encoding");
  return v;
}

}  // namespace

Value wft_from_json(const nlohmann::json& j) {
  if (j.contains("Leaf"))
    return wft_leaf(value_from_encoding(from_hex(j.at("Leaf").get<std::string>())));
  const nlohmann::json& node = j.at("Node");
  Value action = value_from_encoding(from_hex(node.at(0).get<std::string>()));
  std::vector<std::pair<Value, Value>> children;
  for (const auto& kid : node.at(1)) {
    children.emplace_back(value_from_encoding(from_hex(kid.at(0).get<std::string>())),
                          wft_from_json(kid.at(1)));
  }
  return Value::right(Value::pair(action, Value::fn_table(std::move(children))));
}

}  // namespace itx
