#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "doctest.h"

#include "itx/fixtures.hpp"
#include "itx/laws.hpp"
#include "itx/wftree.hpp"

using namespace itx;

namespace {

/// Every request tree of depth at most `depth`, built by direct recursion
/// (leaf, plus one node per action and per choice of child combination).
std::vector<Value> all_trees(const InteractionSystem& w, const Value& i,
                             std::size_t depth) {
  std::vector<Value> out{wft_leaf(Value::unit())};
  if (depth == 0) return out;
  for (const Value& a : w.actions(i).exhaust(16)) {
    std::vector<Value> responses = w.responses(i, a).exhaust(16);
    std::vector<std::vector<Value>> candidates;
    for (const Value& d : responses)
      candidates.push_back(all_trees(w, w.next(i, a, d), depth - 1));
    std::vector<std::size_t> pick(candidates.size(), 0);
    while (true) {
      std::vector<std::pair<Value, Value>> table;
      for (std::size_t k = 0; k < responses.size(); ++k)
        table.emplace_back(responses[k], candidates[k][pick[k]]);
      out.push_back(wft_node(w, i, a, [table](const Value& d) -> Value {
        for (const auto& [key, sub] : table)
          if (key.equals(d)) return sub;
        throw ShapeError("no child for that response");
      }));
      std::size_t k = 0;
      for (; k < pick.size(); ++k) {
        if (++pick[k] < candidates[k].size()) break;
        pick[k] = 0;
      }
      if (k == pick.size()) break;
    }
  }
  return out;
}

std::vector<Bytes> encoded_sorted(const std::vector<Value>& trees) {
  std::vector<Bytes> out;
  for (const Value& t : trees) out.push_back(t.encode());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("request tree constructors and accessors") {
  InteractionSystem w = w_finite();
  Value i0 = Value::nat(0);
  Value leaf = wft_leaf(Value::nat(5));
  CHECK(wft_is_leaf(leaf));
  CHECK(wft_payload(leaf).as_nat() == 5);

  Value req = wft_request(w, i0, Value::nat(0));
  CHECK_FALSE(wft_is_leaf(req));
  CHECK(wft_action(req).as_nat() == 0);
  CHECK(wft_is_leaf(wft_child(req, Value::nat(0))));
  CHECK(wft_is_leaf(wft_child(req, Value::nat(1))));

  CHECK(path_is_done(path_done()));
  Value p = path_step(Value::nat(1), path_done());
  CHECK_FALSE(path_is_done(p));
  CHECK(p.first().as_nat() == 1);
}

TEST_CASE("the free construction enumerates exactly the bounded tree space") {
  InteractionSystem w = w_finite();
  InteractionSystem sw = star(w);
  Value i0 = Value::nat(0);
  std::vector<Value> oracle = all_trees(w, i0, 2);
  REQUIRE(oracle.size() == 9);
  std::vector<Value> enumerated = sw.actions(i0).take(oracle.size());
  CHECK(encoded_sorted(enumerated) == encoded_sorted(oracle));

  std::vector<Value> oracle1 = all_trees(w, Value::nat(1), 2);
  REQUIRE(oracle1.size() == 7);
  CHECK(encoded_sorted(sw.actions(Value::nat(1)).take(oracle1.size())) ==
        encoded_sorted(oracle1));
}

TEST_CASE("paths walk trees to their leaves") {
  InteractionSystem w = w_finite();
  InteractionSystem sw = star(w);
  Value i0 = Value::nat(0);
  Value req = wft_request(w, i0, Value::nat(0));
  std::vector<Value> paths = star_paths(w, i0, req).exhaust(16);
  REQUIRE(paths.size() == 2);
  CHECK(star_next(w, i0, req, paths[0]).as_nat() == 0);
  CHECK(star_next(w, i0, req, paths[1]).as_nat() == 1);
  CHECK(sw.next(i0, req, paths[1]).as_nat() == 1);

  Value leaf = wft_leaf(Value::unit());
  std::vector<Value> lp = star_paths(w, i0, leaf).exhaust(4);
  REQUIRE(lp.size() == 1);
  CHECK(path_is_done(lp[0]));
}

TEST_CASE("folding a tree accumulates leaves") {
  InteractionSystem w = w_finite();
  Value i0 = Value::nat(0);
  Value t = wft_node(w, i0, Value::nat(0), [&w](const Value& d) {
    if (d.as_nat() == 0) return wft_leaf(Value::nat(1));
    return wft_request(w, Value::nat(1), Value::nat(0));
  });
  std::function<std::uint64_t(const Value&, const Value&)> on_leaf =
      [](const Value&, const Value& payload) -> std::uint64_t {
    return payload.is(Value::Kind::Nat) ? payload.as_nat() : 0;
  };
  std::function<std::uint64_t(const Value&, const SemStep<std::uint64_t>&)>
      on_node = [&w](const Value& i,
                     const SemStep<std::uint64_t>& step) -> std::uint64_t {
    std::uint64_t sum = 0;
    for (const Value& d : w.responses(i, step.action).exhaust(16))
      sum += step.then(d);
    return sum;
  };
  CHECK(fm_fold<std::uint64_t>(w, i0, t, on_leaf, on_node) == 1);
  CHECK(fm_fold<std::uint64_t>(w, i0, wft_leaf(Value::nat(9)), on_leaf,
                               on_node) == 9);
}

TEST_CASE("grafting flattens a tree of trees") {
  InteractionSystem w = w_finite();
  InteractionSystem sw = star(w);
  Value i0 = Value::nat(0);
  Value shape = wft_request(w, i0, Value::nat(0));
  Value t2 = wft_node(sw, i0, shape, [&w, &sw](const Value& path) {
    if (path.first().as_nat() == 0) return wft_leaf(Value::unit());
    return wft_node(sw, Value::nat(1),
                    wft_request(w, Value::nat(1), Value::nat(0)),
                    [](const Value&) { return wft_leaf(Value::unit()); });
  });
  Value flat = graft(w, i0, t2);
  REQUIRE_FALSE(wft_is_leaf(flat));
  CHECK(wft_action(flat).as_nat() == 0);
  CHECK(wft_is_leaf(wft_child(flat, Value::nat(0))));
  Value deep = wft_child(flat, Value::nat(1));
  REQUIRE_FALSE(wft_is_leaf(deep));
  CHECK(wft_action(deep).as_nat() == 0);
  CHECK(wft_is_leaf(wft_child(deep, Value::nat(0))));

  Value short_flat = path_step(Value::nat(0), path_done());
  Value short_nested = graft_path_forward(w, i0, t2, short_flat);
  CHECK(short_nested.first()
            .equals(path_step(Value::nat(0), path_done()), Budget{16}));
  CHECK(path_is_done(short_nested.second()));
  CHECK(graft_path_backward(w, i0, t2, short_nested)
            .equals(short_flat, Budget{16}));

  Value long_flat =
      path_step(Value::nat(1), path_step(Value::nat(0), path_done()));
  Value long_nested = graft_path_forward(w, i0, t2, long_flat);
  CHECK(graft_path_backward(w, i0, t2, long_nested)
            .equals(long_flat, Budget{16}));
}

TEST_CASE("request trees run against behaviors and leave the rest") {
  InteractionSystem ws = w_stream();
  Value req = wft_request(ws, Value::unit(), Value::unit());
  EatResult r = eat(ws, Value::unit(), req, nat_stream());
  CHECK(r.payload.is(Value::Kind::Unit));
  REQUIRE_FALSE(path_is_done(r.path));
  CHECK(r.path.first().as_nat() == 0);
  CHECK(path_is_done(r.path.second()));
  std::optional<std::vector<Value>> rest = take_stream(r.residual, 3);
  REQUIRE(rest.has_value());
  CHECK((*rest)[0].as_nat() == 1);
  CHECK((*rest)[2].as_nat() == 3);

  EatResult stop = eat(ws, Value::unit(), wft_leaf(Value::nat(4)), nat_stream());
  CHECK(stop.payload.as_nat() == 4);
  CHECK(path_is_done(stop.path));
}

TEST_CASE("request trees round trip through json") {
  InteractionSystem w = w_finite();
  Value i0 = Value::nat(0);
  Value t = random_tree(w, i0, 5, 3);
  nlohmann::json j = wft_to_json(w, i0, t);
  Value back = wft_from_json(j);
  CHECK(back.equals(t));
  CHECK(wft_from_json(wft_to_json(w, i0, back)).equals(back));
}

TEST_CASE("free construction law suite holds") {
  LawParams p;
  for (const LawCheck& c : run_law_suite("freemonad", p))
    CHECK_MESSAGE(c.pass, "freemonad/", c.name, ": ", c.detail);
}
