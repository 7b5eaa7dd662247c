#include <algorithm>
#include <cstdint>
#include <vector>

#include "doctest.h"

#include "itx/behavior.hpp"
#include "itx/fixtures.hpp"
#include "itx/laws.hpp"
#include "itx/wftree.hpp"

using namespace itx;

namespace {

std::size_t tree_depth(const InteractionSystem& w, const Value& i,
                       const Value& t) {
  if (wft_is_leaf(t)) return 0;
  Value a = wft_action(t);
  std::size_t best = 0;
  for (const Value& d : w.responses(i, a).exhaust(16))
    best = std::max(best, tree_depth(w, w.next(i, a, d), wft_child(t, d)));
  return 1 + best;
}

}  // namespace

TEST_CASE("registries resolve names and stay coherent") {
  CHECK(system_registry().size() == 5);
  CHECK(find_behavior("nope") == nullptr);
  CHECK(find_sim("nope") == nullptr);

  const SimEntry* sb = find_sim("sumblock");
  REQUIRE(sb != nullptr);
  CHECK(sb->kind == "general");
  CHECK(sb->source == "stream");
  CHECK(sb->target == "stream");
  const SimEntry* ls = find_sim("layersum");
  REQUIRE(ls != nullptr);
  CHECK(ls->kind == "layered");
  CHECK(ls->source == "bintree");
  const SimEntry* id = find_sim("id");
  REQUIRE(id != nullptr);
  CHECK(id->source == "*");

  for (const BehaviorEntry& e : behavior_registry()) {
    bool known = false;
    for (const auto& [name, w] : system_registry())
      known = known || name == e.over;
    CHECK_MESSAGE(known, e.name, " runs over unregistered system ", e.over);
    Behavior b = e.make(1);
    REQUIRE(b.system().dual_base != nullptr);
    CHECK(b.system().dual_base->name == e.over);
  }

  for (const SimEntry& e : sim_registry()) {
    const BehaviorEntry* input = nullptr;
    for (const BehaviorEntry& be : behavior_registry())
      if (e.source == "*" || be.over == e.source) {
        input = &be;
        break;
      }
    REQUIRE_MESSAGE(input != nullptr, e.name, " has no runnable input");
    Behavior out = e.eval(input->make(1));
    REQUIRE(out.system().dual_base != nullptr);
    if (e.target != "*")
      CHECK_MESSAGE(out.system().dual_base->name == e.target, e.name,
                    " lands over ", out.system().dual_base->name);
    (void)out.unfold();
  }
}

TEST_CASE("mixing is deterministic and spreads") {
  CHECK(mix64(42) == mix64(42));
  CHECK(mix64(42) != mix64(43));
  CHECK(rand_bin_label(9, 0) == rand_bin_edge_seed(9, 0) % 10);
  CHECK(rand_bin_label(9, 1) == rand_bin_edge_seed(9, 1) % 10);

  Unfolding u = rand_bin(9).unfold();
  CHECK(u.action.apply(Value::nat(0)).as_nat() == rand_bin_label(9, 0));
  CHECK(u.action.apply(Value::nat(1)).as_nat() == rand_bin_label(9, 1));
  Unfolding child = u.next(Value::nat(1)).unfold();
  CHECK(child.action.apply(Value::nat(0)).as_nat() ==
        rand_bin_label(rand_bin_edge_seed(9, 1), 0));
}

TEST_CASE("edge labels by branch word") {
  CHECK(heap_edge_label({0}) == 1);
  CHECK(heap_edge_label({1}) == 2);
  CHECK(heap_edge_label({0, 0}) == 3);
  CHECK(heap_edge_label({0, 1}) == 4);
  CHECK(heap_edge_label({1, 1}) == 6);
  CHECK(rand_bin_edge_label(9, {1, 0}) ==
        rand_bin_label(rand_bin_edge_seed(9, 1), 0));
}

TEST_CASE("expected-output calculators on closed forms") {
  CHECK(oracle_sumblock([](std::uint64_t) { return 0; }, 6) ==
        std::vector<std::uint64_t>{0, 0, 0, 0, 0, 0});
  CHECK(oracle_sumblock([](std::uint64_t) { return 1; }, 4) ==
        std::vector<std::uint64_t>{1, 1, 1, 1});
  CHECK(oracle_map([](std::uint64_t k) { return k; },
                   [](std::uint64_t k) { return 2 * k; }, 4) ==
        std::vector<std::uint64_t>{0, 2, 4, 6});
  CHECK(oracle_layer_sums([](const std::vector<int>&) { return 1; }, 3) ==
        std::vector<std::uint64_t>{2, 4, 8});
}

TEST_CASE("random request trees are reproducible and bounded") {
  InteractionSystem w = w_finite();
  Value i0 = Value::nat(0);
  Value a = random_tree(w, i0, 11, 3);
  Value b = random_tree(w, i0, 11, 3);
  CHECK(a.equals(b));
  bool any_different = false;
  for (std::uint64_t seed = 0; seed < 8 && !any_different; ++seed)
    any_different = !random_tree(w, i0, seed, 3).equals(a);
  CHECK(any_different);
  for (std::uint64_t seed = 0; seed < 16; ++seed)
    CHECK(tree_depth(w, i0, random_tree(w, i0, seed, 3)) <= 3);
}

TEST_CASE("one-step transducers read one element per output") {
  ShapeReport r =
      stream_transducer_shape(generalize(sim_succ()), nat_stream(), 6);
  CHECK(r.reads_per_output == std::vector<std::size_t>(6, 1));
  CHECK(r.chain_ok);
}

TEST_CASE("walking the two-state system follows first responses") {
  Behavior walk = fin_walk();
  CHECK_FALSE(take_stream(walk, 2).has_value());
  CHECK(bisim_depth(walk, fin_walk(), kTreeBisimDepth).related);
}

TEST_CASE("oracle, eating and shape law suites hold") {
  LawParams p;
  for (const char* suite : {"oracle", "eating", "shape"})
    for (const LawCheck& c : run_law_suite(suite, p))
      CHECK_MESSAGE(c.pass, suite, "/", c.name, ": ", c.detail);
}
