#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "doctest.h"

#include "itx/behavior.hpp"
#include "itx/fixtures.hpp"

using namespace itx;

namespace {

std::vector<std::uint64_t> nat_prefix(const Behavior& b, std::size_t n) {
  std::optional<std::vector<Value>> elements = take_stream(b, n);
  REQUIRE(elements.has_value());
  std::vector<std::uint64_t> out;
  for (const Value& v : *elements) out.push_back(v.as_nat());
  return out;
}

}  // namespace

TEST_CASE("counting stream emits the naturals") {
  CHECK(nat_prefix(nat_stream(), 6) ==
        std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5});
  CHECK(nat_prefix(inc_stream(), 5) == std::vector<std::uint64_t>{1, 2, 3, 4, 5});
}

TEST_CASE("seeded streams are reproducible digits") {
  std::vector<std::uint64_t> a = nat_prefix(rand_stream(7), 12);
  std::vector<std::uint64_t> b = nat_prefix(rand_stream(7), 12);
  CHECK(a == b);
  for (std::uint64_t digit : a) CHECK(digit < 10);
  CHECK(nat_prefix(rand_stream(8), 12) != a);
}

TEST_CASE("stream extraction rejects branching behaviors") {
  CHECK_FALSE(take_stream(heap_bin(), 3).has_value());
}

TEST_CASE("truncation freezes a bounded picture") {
  TruncTree t = truncate(nat_stream(), 2, Budget{4});
  CHECK(t.state == Value::unit().encode());
  REQUIRE(t.branches.size() == 1);
  REQUIRE(t.branches[0].second.size() == 1);
  const TruncTree& child = t.branches[0].second[0].second;
  CHECK(child.branches.size() == 1);
  CHECK(child.branches[0].second[0].second.truncated);

  TruncTree h = truncate(heap_bin(), 1, Budget{4});
  REQUIRE(h.branches.size() == 1);
  CHECK(h.branches[0].second.size() == 2);

  std::string text = trunc_to_text(t);
  CHECK(text.find("@ *") != std::string::npos);
  nlohmann::json j = trunc_to_json(t);
  CHECK(j.contains("br"));
}

TEST_CASE("bounded bisimilarity separates and relates streams") {
  CHECK(bisim_depth(nat_stream(), nat_stream(), kStreamBisimDepth).related);
  CHECK_FALSE(bisim_depth(nat_stream(), inc_stream(), 1).related);
  CHECK(bisim_depth(heap_bin(), heap_bin(), 6).related);
  CHECK_FALSE(bisim_depth(heap_bin(), rand_bin(3), 3).related);

  // Streams answer over a singleton base-action axis, so nothing gets cut
  // there; a wide-branching base is needed to see the budget notes.
  BisimResult fine = bisim_depth(nat_stream(), nat_stream(), 2, Budget{4});
  CHECK(fine.related);
  CHECK(fine.notes.empty());

  auto base = std::make_shared<const InteractionSystem>(w_fbtree());
  auto over = std::make_shared<const InteractionSystem>(dual(*base));
  Behavior::Step step = [base](const Value& i, const Value&) -> SemStep<Value> {
    Value choice = Value::fn([](const Value& a) { return a.second(); },
                             base->actions(i));
    return SemStep<Value>{choice, [](const Value&) { return Value::unit(); }};
  };
  Behavior wide(over, Value::unit(), Value::unit(), step);
  BisimResult cut = bisim_depth(wide, wide, 2, Budget{4});
  CHECK(cut.related);
  CHECK_FALSE(cut.notes.empty());
}

TEST_CASE("probing counts unfoldings without changing the behavior") {
  ProbeLog log;
  Behavior p = probed(nat_stream(), log);
  CHECK(log.count() == 0);
  CHECK(nat_prefix(p, 3) == std::vector<std::uint64_t>{0, 1, 2});
  CHECK(log.count() == 3);
  CHECK(log.is_chain());
  std::vector<std::size_t> hist = log.depth_histogram();
  REQUIRE(hist.size() == 3);
  CHECK(hist == std::vector<std::size_t>{1, 1, 1});
}
