#include <cstdint>
#include <vector>

#include "doctest.h"

#include "itx/fixtures.hpp"
#include "itx/interaction.hpp"
#include "itx/laws.hpp"

using namespace itx;

namespace {

std::size_t count(const Enumeration& e) { return e.exhaust(256).size(); }

/// Independent size account for the sequential composite: one first-system
/// action together with a follow-up action per response.
std::size_t compose_count(const InteractionSystem& a,
                          const InteractionSystem& b, const Value& i) {
  std::size_t total = 0;
  for (const Value& a1 : a.actions(i).exhaust(64)) {
    std::size_t prod = 1;
    for (const Value& d1 : a.responses(i, a1).exhaust(64))
      prod *= b.actions(a.next(i, a1, d1)).exhaust(64).size();
    total += prod;
  }
  return total;
}

}  // namespace

TEST_CASE("two-state reference system shapes") {
  InteractionSystem w = w_finite();
  Value s0 = Value::nat(0);
  Value s1 = Value::nat(1);
  CHECK(count(w.actions(s0)) == 2);
  CHECK(count(w.actions(s1)) == 1);
  CHECK(count(w.responses(s0, Value::nat(0))) == 2);
  CHECK(count(w.responses(s0, Value::nat(1))) == 1);
  CHECK(count(w.responses(s1, Value::nat(0))) == 2);
  CHECK(w.next(s0, Value::nat(0), Value::nat(0)).as_nat() == 0);
  CHECK(w.next(s0, Value::nat(0), Value::nat(1)).as_nat() == 1);
  CHECK(w.next(s0, Value::nat(1), Value::nat(0)).as_nat() == 1);
  CHECK(w.next(s1, Value::nat(0), Value::nat(0)).as_nat() == 1);
  CHECK(w.next(s1, Value::nat(0), Value::nat(1)).as_nat() == 0);
}

TEST_CASE("steps map covariantly in the result") {
  SemStep<Value> step;
  step.action = Value::nat(0);
  step.then = [](const Value& d) { return Value::nat(d.as_nat() + 100); };
  SemStep<std::uint64_t> mapped = ext_map<Value, std::uint64_t>(
      step, [](const Value& v) { return v.as_nat() * 2; });
  CHECK(mapped.action.as_nat() == 0);
  CHECK(mapped.then(Value::nat(1)) == 202);
}

TEST_CASE("sequential composition counts and steps") {
  InteractionSystem w = w_finite();
  InteractionSystem c = compose_is(w, w);
  Value s0 = Value::nat(0);
  Value s1 = Value::nat(1);
  CHECK(count(c.actions(s0)) == 3);
  CHECK(count(c.actions(s1)) == 2);
  CHECK(count(c.actions(s0)) == compose_count(w, w, s0));
  CHECK(count(c.actions(s1)) == compose_count(w, w, s1));

  for (const Value& ca : c.actions(s0).exhaust(8)) {
    Value a1 = ca.first();
    for (const Value& cd : c.responses(s0, ca).exhaust(16)) {
      Value d1 = cd.first();
      Value d2 = cd.second();
      Value mid = w.next(s0, a1, d1);
      Value a2 = ca.second().apply(d1);
      CHECK(c.next(s0, ca, cd).equals(w.next(mid, a2, d2)));
    }
  }
}

TEST_CASE("dualizing swaps questions and answers") {
  InteractionSystem w = w_finite();
  InteractionSystem d = dual(w);
  Value s0 = Value::nat(0);
  CHECK(count(d.actions(s0)) == 2);
  REQUIRE(d.dual_base != nullptr);
  CHECK(d.dual_base->name == w.name);
  for (const Value& cf : d.actions(s0).exhaust(8)) {
    std::vector<Value> answers = d.responses(s0, cf).exhaust(8);
    std::vector<Value> base = w.actions(s0).exhaust(8);
    REQUIRE(answers.size() == base.size());
    for (std::size_t k = 0; k < base.size(); ++k) {
      CHECK(answers[k].equals(base[k]));
      CHECK(d.next(s0, cf, base[k])
                .equals(w.next(s0, base[k], cf.apply(base[k]))));
    }
  }
}

TEST_CASE("hom system pairs states and transports steps") {
  InteractionSystem w = w_finite();
  InteractionSystem h = hom(w, w);
  Value ii = hom_state(Value::nat(0), Value::nat(0));
  CHECK(count(h.actions(ii)) == 12);
  Value ha = *h.actions(ii).nth(0);
  for (const Value& hd : h.responses(ii, ha).exhaust(16)) {
    Value moved = h.next(ii, ha, hd);
    CHECK(moved.is(Value::Kind::Pair));
  }
}

TEST_CASE("choice-of-answer transposes flat and nested steps") {
  InteractionSystem w = w_finite();
  Value s0 = Value::nat(0);
  InteractionSystem c = compose_is(w, w);
  Value ca = *c.actions(s0).nth(0);
  SemStep<Value> flat;
  flat.action = ca;
  flat.then = [](const Value& d) { return d; };
  SemStep<SemStep<Value>> nested = ac_backward(w, w, s0, flat);
  CHECK(nested.action.equals(ca.first()));
  SemStep<Value> back = ac_forward(w, w, s0, nested);
  CHECK(approx_equal(back.action, ca, Budget{}));
  for (const Value& cd : c.responses(s0, ca).exhaust(16))
    CHECK(back.then(cd).equals(flat.then(cd)));
}

TEST_CASE("container law suites hold") {
  LawParams p;
  for (const char* suite : {"extension", "choice", "compose", "duality"})
    for (const LawCheck& c : run_law_suite(suite, p))
      CHECK_MESSAGE(c.pass, suite, "/", c.name, ": ", c.detail);
}
