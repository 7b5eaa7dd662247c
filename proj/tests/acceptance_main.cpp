#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "itx/behavior.hpp"
#include "itx/enumeration.hpp"
#include "itx/fixtures.hpp"
#include "itx/interaction.hpp"
#include "itx/layering.hpp"
#include "itx/simulate.hpp"
#include "itx/value.hpp"
#include "itx/wftree.hpp"

// Acceptance gate: one line per criterion, [PASS]/[FAIL] plus timing.
// Criterion 1 is expected to FAIL: its required five-output trace is
// arithmetically inconsistent with the block-read schedule asserted by
// criterion 9 (1+2+4+8+16 = 31 reads make the fifth output 345, not 376).
// The process exits 0 exactly when every criterion matches this documented
// expectation, so regressions in either direction are loud.

using namespace itx;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

Value u() { return Value::unit(); }

std::vector<std::uint64_t> nats(const Behavior& b, std::size_t n) {
  std::optional<std::vector<Value>> taken = take_stream(b, n);
  if (!taken.has_value()) throw ShapeError("behavior is not stream shaped");
  std::vector<std::uint64_t> out;
  for (const Value& v : *taken) out.push_back(v.as_nat());
  return out;
}

std::string show(const std::vector<std::uint64_t>& xs) {
  std::string out = "[";
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k > 0) out += ", ";
    out += std::to_string(xs[k]);
  }
  return out + "]";
}

bool related(const Behavior& a, const Behavior& b, std::size_t depth) {
  return bisim_depth(a, b, depth).related;
}

// --- 1. sum-block trace ---------------------------------------------------

Outcome sum_block_trace() {
  const std::vector<std::uint64_t> required{0, 2, 15, 77, 376};
  std::vector<std::uint64_t> got =
      nats(eval_general(sim_sumblock(), u(), u(), nat_stream()), 5);
  Outcome o;
  o.pass = got == required;
  o.detail = "produced " + show(got) + ", required " + show(required);
  if (!o.pass)
    o.detail +=
        "; one head plus head-many elements per output = 31 reads, so the "
        "fifth output sums 16..30 = 345";
  return o;
}

// --- 2. layer-sum trace ---------------------------------------------------

Outcome layer_sum_trace() {
  const std::vector<std::uint64_t> required{3, 18, 84};
  std::vector<std::uint64_t> got =
      nats(eval_layered(sim_layersum(), u(), heap_bin()), 3);
  Outcome o;
  o.pass = got == required;
  o.detail = "produced " + show(got) + ", required " + show(required);
  return o;
}

// --- 3. choice-of-answer isomorphisms, exhaustively ------------------------

Outcome choice_round_trips() {
  InteractionSystem w = w_finite();
  InteractionSystem c = compose_is(w, w);
  InteractionSystem d = dual(w);
  std::size_t total = 0;
  std::size_t bad = 0;

  for (std::uint64_t s : {0ull, 1ull}) {
    Value i = Value::nat(s);

    for (const Value& ca : c.actions(i).exhaust(64)) {
      SemStep<Value> flat;
      flat.action = ca;
      flat.then = [](const Value& dd) { return dd; };
      SemStep<Value> back = ac_forward(w, w, i, ac_backward(w, w, i, flat));
      bool ok = approx_equal(back.action, ca, Budget{});
      for (const Value& dd : c.responses(i, ca).exhaust(64))
        ok = ok && back.then(dd).equals(flat.then(dd));
      ++total;
      if (!ok) ++bad;
    }

    for (const Value& a1 : w.actions(i).exhaust(64)) {
      Enumeration follow = Enumeration::fn_space(
          w.responses(i, a1),
          [&w, i, a1](const Value& d1) { return w.actions(w.next(i, a1, d1)); },
          64);
      for (const Value& y : follow.exhaust(64)) {
        SemStep<SemStep<Value>> nested;
        nested.action = a1;
        nested.then = [y](const Value& d1) {
          SemStep<Value> inner;
          inner.action = y.apply(d1);
          inner.then = [d1](const Value& d2) { return Value::pair(d1, d2); };
          return inner;
        };
        SemStep<SemStep<Value>> back =
            ac_backward(w, w, i, ac_forward(w, w, i, nested));
        bool ok = back.action.equals(a1);
        for (const Value& d1 : w.responses(i, a1).exhaust(64)) {
          SemStep<Value> ib = back.then(d1);
          ok = ok && ib.action.equals(y.apply(d1));
          Value mid = w.next(i, a1, d1);
          for (const Value& d2 : w.responses(mid, y.apply(d1)).exhaust(64))
            ok = ok && ib.then(d2).equals(Value::pair(d1, d2));
        }
        ++total;
        if (!ok) ++bad;
      }
    }

    for (const Value& cf : d.actions(i).exhaust(64)) {
      SemStep<Value> step;
      step.action = cf;
      step.then = [](const Value& a) { return Value::pair(a, a); };
      SemStep<Value> back = dual_ac_backward(w, i, dual_ac_forward(w, i, step));
      bool ok = approx_equal(back.action, cf, Budget{});
      for (const Value& a : w.actions(i).exhaust(64))
        ok = ok && back.then(a).equals(step.then(a));
      ++total;
      if (!ok) ++bad;
    }
  }

  Outcome o;
  o.pass = bad == 0 && total > 0;
  o.detail = std::to_string(total - bad) + "/" + std::to_string(total) +
             " enumerated elements round trip to themselves";
  return o;
}

// --- 4. evaluation functoriality -------------------------------------------

Outcome eval_functoriality() {
  Value cw = compose_witness(u(), u(), u());
  std::size_t bad = 0;
  std::string first;

  struct LinCase {
    std::string name;
    LinearSim outer;
    LinearSim inner;
    Behavior input;
    std::size_t depth;
  };
  std::vector<LinCase> lin;
  lin.push_back({"succ.succ", sim_succ(), sim_succ(), nat_stream(), 20});
  lin.push_back({"succ.double", sim_succ(), sim_double(), nat_stream(), 20});
  lin.push_back({"double.succ", sim_double(), sim_succ(), nat_stream(), 20});
  lin.push_back(
      {"double.double", sim_double(), sim_double(), rand_stream(11), 20});
  lin.push_back({"id.succ", sim_id(w_stream()), sim_succ(), nat_stream(), 20});
  lin.push_back({"mirror.mirror", sim_mirror(), sim_mirror(), heap_bin(), 12});
  for (const LinCase& cse : lin) {
    Behavior composed =
        eval_linear(sim_compose(cse.outer, cse.inner), u(), cw, cse.input);
    Behavior nested = eval_linear(
        cse.outer, u(), u(), eval_linear(cse.inner, u(), u(), cse.input));
    if (!related(composed, nested, cse.depth)) {
      ++bad;
      if (first.empty()) first = cse.name;
    }
  }

  struct GenCase {
    std::string name;
    GeneralSim outer;
    GeneralSim inner;
    Behavior input;
    std::size_t depth;
  };
  std::vector<GenCase> gen;
  gen.push_back({"gsucc.gdouble", generalize(sim_succ()),
                 generalize(sim_double()), nat_stream(), 20});
  gen.push_back({"gdouble.gsucc", generalize(sim_double()),
                 generalize(sim_succ()), nat_stream(), 20});
  gen.push_back({"gsucc.gsucc", generalize(sim_succ()),
                 generalize(sim_succ()), rand_stream(12), 20});
  gen.push_back({"sumblock.gsucc", sim_sumblock(), generalize(sim_succ()),
                 nat_stream(), 8});
  for (const GenCase& cse : gen) {
    Behavior composed =
        eval_general(bullet(cse.outer, cse.inner), u(), cw, cse.input);
    Behavior nested = eval_general(
        cse.outer, u(), u(), eval_general(cse.inner, u(), u(), cse.input));
    if (!related(composed, nested, cse.depth)) {
      ++bad;
      if (first.empty()) first = cse.name;
    }
  }

  Outcome o;
  o.pass = bad == 0;
  o.detail = bad == 0 ? "6 linear pairs (5 at depth 20) and 4 general pairs "
                        "(3 at depth 20) agree with nested evaluation"
                      : std::to_string(bad) + " pairs disagree, first: " + first;
  return o;
}

// --- 5. comonad laws at evaluation level ------------------------------------

Outcome comonad_laws() {
  InteractionSystem ws = w_stream();
  InteractionSystem wb = w_bintree();
  Value cw = compose_witness(u(), u(), u());
  Behavior nat = nat_stream();
  Behavior heap = heap_bin();
  std::vector<std::pair<std::string, bool>> results;

  {
    Behavior lifted = to_star_behavior(ws, nat);
    Behavior out = from_star_behavior(
        ws, eval_linear(cobind(epsilon_general(ws)), u(), u(), lifted));
    results.emplace_back("counit-right-stream", related(out, nat, 12));
  }
  {
    Behavior lifted = to_star_behavior(wb, heap);
    Behavior out = from_star_behavior(
        wb, eval_linear(cobind(epsilon_general(wb)), u(), u(), lifted));
    results.emplace_back("counit-right-tree", related(out, heap, 10));
  }
  {
    GeneralSim r = sim_sumblock();
    Behavior lhs = eval_linear(sim_compose(epsilon(ws), cobind(r)), u(), cw,
                               to_star_behavior(ws, nat));
    Behavior rhs = eval_general(r, u(), u(), nat);
    results.emplace_back("counit-left-stream", related(lhs, rhs, 12));
  }
  {
    GeneralSim r = generalize(sim_mirror());
    Behavior lhs = eval_linear(sim_compose(epsilon(wb), cobind(r)), u(), cw,
                               to_star_behavior(wb, heap));
    Behavior rhs = eval_general(r, u(), u(), heap);
    results.emplace_back("counit-left-tree", related(lhs, rhs, 10));
  }
  {
    GeneralSim r = sim_sumblock();
    GeneralSim s = generalize(sim_succ());
    Behavior lifted = to_star_behavior(ws, nat);
    Behavior joined = from_star_behavior(
        ws, eval_linear(cobind(bullet(r, s)), u(), cw, lifted));
    Behavior chained = from_star_behavior(
        ws,
        eval_linear(sim_compose(cobind(r), cobind(s)), u(), cw, lifted));
    // The block reads double per output and the splice translation compounds
    // them, so this check is the one that sets the wall-clock cost.
    results.emplace_back("coassoc-stream", related(joined, chained, 10));
  }
  {
    GeneralSim r = generalize(sim_mirror());
    GeneralSim s = generalize(sim_mirror());
    Behavior lifted = to_star_behavior(wb, heap);
    Behavior joined = from_star_behavior(
        wb, eval_linear(cobind(bullet(r, s)), u(), cw, lifted));
    Behavior chained = from_star_behavior(
        wb,
        eval_linear(sim_compose(cobind(r), cobind(s)), u(), cw, lifted));
    results.emplace_back("coassoc-tree", related(joined, chained, 10));
  }

  Outcome o;
  o.pass = true;
  std::string failed;
  for (const auto& [name, okay] : results) {
    o.pass = o.pass && okay;
    if (!okay && failed.empty()) failed = name;
  }
  o.detail = o.pass ? "counit (both sides) and coassociativity hold on stream "
                      "and binary-tree fixtures (depths 12 and 10)"
                    : "first failing law: " + failed;
  return o;
}

// --- 6. isomorphism suites ---------------------------------------------------

Outcome isomorphism_suites() {
  InteractionSystem ws = w_stream();
  InteractionSystem wi = w_increasing();
  InteractionSystem wb = w_bintree();
  Behavior nat = nat_stream();
  Behavior inc = inc_stream();
  Behavior heap = heap_bin();
  std::vector<std::pair<std::string, bool>> results;

  results.emplace_back(
      "star-nat",
      related(from_star_behavior(ws, to_star_behavior(ws, nat)), nat, 30));
  results.emplace_back(
      "star-inc",
      related(from_star_behavior(wi, to_star_behavior(wi, inc)), inc, 30));
  Behavior rs = rand_stream(21);
  results.emplace_back(
      "star-rand",
      related(from_star_behavior(ws, to_star_behavior(ws, rs)), rs, 30));
  results.emplace_back(
      "star-heap",
      related(from_star_behavior(wb, to_star_behavior(wb, heap)), heap, 10));
  Behavior rb = rand_bin(22);
  results.emplace_back(
      "star-rand-bin",
      related(from_star_behavior(wb, to_star_behavior(wb, rb)), rb, 10));

  results.emplace_back(
      "layers-nat",
      related(from_layers(nat.system(), nat.state(), to_layers(nat)), nat, 30));
  results.emplace_back(
      "layers-heap",
      related(from_layers(heap.system(), heap.state(), to_layers(heap)), heap,
              10));

  results.emplace_back(
      "dd-nat", related(dd_unwrap(nat.system(), dd_wrap(nat)), nat, 30));
  {
    Behavior layers = to_layers(heap);
    InteractionSystem lay = layered(heap.system(), heap.state());
    results.emplace_back(
        "dd-layers-heap",
        related(dd_unwrap(lay, dd_wrap(layers)), layers, 10));
  }

  Outcome o;
  o.pass = true;
  std::string failed;
  for (const auto& [name, okay] : results) {
    o.pass = o.pass && okay;
    if (!okay && failed.empty()) failed = name;
  }
  o.detail = o.pass ? std::to_string(results.size()) +
                          " round trips hold (streams depth 30, trees depth 10)"
                    : "first failing round trip: " + failed;
  return o;
}

// --- 7. eating postconditions ------------------------------------------------

Outcome eating_postconditions() {
  struct EatCase {
    std::string name;
    InteractionSystem base;
    Behavior input;
    std::size_t depth;
  };
  std::vector<EatCase> cases;
  cases.push_back({"nat", w_stream(), nat_stream(), 20});
  cases.push_back({"rand-stream", w_stream(), rand_stream(31), 20});
  cases.push_back({"increasing", w_increasing(), inc_stream(), 20});
  cases.push_back({"heap", w_bintree(), heap_bin(), 12});
  cases.push_back({"rand-bin", w_bintree(), rand_bin(32), 12});
  cases.push_back({"fin-walk", w_finite(), fin_walk(), 12});

  std::size_t total = 0;
  std::size_t bad = 0;
  std::string first;
  for (std::size_t ck = 0; ck < cases.size(); ++ck) {
    const EatCase& cse = cases[ck];
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Value tree =
          random_tree(cse.base, cse.input.state(), 1000 * ck + seed, 4);
      EatResult r = eat(cse.base, cse.input.state(), tree, cse.input);

      Behavior walked = cse.input;
      Value node = tree;
      Value at = cse.input.state();
      while (!wft_is_leaf(node)) {
        Unfolding uf = walked.unfold();
        Value a = wft_action(node);
        Value d = uf.action.apply(a);
        node = wft_child(node, d);
        at = cse.base.next(at, a, d);
        walked = uf.next(a);
      }

      bool ok =
          r.residual.state().equals(
              star_next(cse.base, cse.input.state(), tree, r.path)) &&
          r.residual.state().equals(at) &&
          r.payload.equals(wft_payload(node)) &&
          related(r.residual, walked, cse.depth);
      ++total;
      if (!ok) {
        ++bad;
        if (first.empty())
          first = cse.name + " seed " + std::to_string(seed);
      }
    }
  }

  Outcome o;
  o.pass = bad == 0;
  o.detail = o.pass ? std::to_string(total) +
                          " residuals sit at the path endpoint and match the "
                          "navigated behavior (streams depth 20, trees depth 12)"
                    : std::to_string(bad) + "/" + std::to_string(total) +
                          " residuals disagree, first: " + first;
  return o;
}

// --- 8. oracle equivalence -----------------------------------------------------

Outcome oracle_equivalence() {
  std::size_t total = 0;
  std::size_t bad = 0;
  std::string first;
  auto tally = [&](const std::string& name, bool okay) {
    ++total;
    if (!okay) {
      ++bad;
      if (first.empty()) first = name;
    }
  };

  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    std::function<std::uint64_t(std::uint64_t)> digit =
        [seed](std::uint64_t k) {
          std::uint64_t x = seed;
          for (std::uint64_t j = 0; j < k; ++j) x = mix64(x);
          return mix64(x) % 10;
        };
    Behavior in = rand_stream(seed);
    std::string tag = " seed " + std::to_string(seed);

    tally("succ" + tag,
          nats(eval_linear(sim_succ(), u(), u(), in), 10) ==
              oracle_map(digit, [](std::uint64_t k) { return k + 1; }, 10));
    tally("double" + tag,
          nats(eval_linear(sim_double(), u(), u(), in), 10) ==
              oracle_map(digit, [](std::uint64_t k) { return 2 * k; }, 10));
    tally("id" + tag,
          nats(eval_linear(sim_id(w_stream()), u(), u(), in), 10) ==
              oracle_map(digit, [](std::uint64_t k) { return k; }, 10));
    tally("sumblock" + tag,
          nats(eval_general(sim_sumblock(), u(), u(), in), 10) ==
              oracle_sumblock(digit, 10));
    tally("layersum" + tag,
          nats(eval_layered(sim_layersum(), u(), rand_bin(seed)), 3) ==
              oracle_layer_sums(
                  [seed](const std::vector<int>& word) {
                    return rand_bin_edge_label(seed, word);
                  },
                  3));
  }

  Outcome o;
  o.pass = bad == 0;
  o.detail = o.pass ? std::to_string(total) +
                          " transducer/calculator agreements over 100 seeds"
                    : std::to_string(bad) + "/" + std::to_string(total) +
                          " disagree, first: " + first;
  return o;
}

// --- 9. laziness and single-branch instrumentation ------------------------------

Outcome laziness_and_chains() {
  Outcome o;
  o.pass = true;
  auto fail = [&o](const std::string& why) {
    o.pass = false;
    if (o.detail.empty()) o.detail = why;
  };

  {
    ProbeLog log;
    Behavior src = probed(nat_stream(), log);
    Behavior general = eval_general(sim_sumblock(), u(), u(), src);
    Behavior linear = eval_linear(sim_succ(), u(), u(), src);
    Behavior starred = to_star_behavior(w_stream(), src);
    Behavior layers = to_layers(src);
    (void)linear;
    (void)starred;
    (void)layers;
    if (log.count() != 0) fail("construction queried the input");
    Unfolding uf = general.unfold();
    (void)uf;
    if (o.pass && log.count() != 0)
      fail("unfolding before any demand queried the input");
  }

  ShapeReport blocks = stream_transducer_shape(sim_sumblock(), nat_stream(), 5);
  if (blocks.reads_per_output != std::vector<std::size_t>{1, 2, 4, 8, 16})
    fail("block transducer read counts are off");
  if (!blocks.chain_ok) fail("block transducer queries left a single chain");

  ShapeReport ones =
      stream_transducer_shape(generalize(sim_succ()), nat_stream(), 8);
  if (ones.reads_per_output != std::vector<std::size_t>(8, 1))
    fail("one-step transducer read counts are off");
  if (!ones.chain_ok) fail("one-step transducer queries left a single chain");

  {
    ProbeLog log;
    Behavior out = eval_layered(sim_layersum(), u(), probed(heap_bin(), log));
    if (log.count() != 0) fail("layered construction queried the input");
    (void)nats(out, 3);
    if (log.depth_histogram() != std::vector<std::size_t>{1, 2, 4})
      fail("layered evaluation did not complete exactly three layers");
    std::set<std::uint64_t> seen;
    for (const ProbeEntry& e : log.entries())
      if (!seen.insert(e.node).second) fail("a node was queried twice");
  }

  if (o.pass)
    o.detail =
        "no queries before demand; block reads 1,2,4,8,16 on one chain; "
        "layered reads complete layers 1,2,4 without repeats";
  return o;
}

// --- 10. driver determinism -----------------------------------------------------

std::pair<int, std::string> run_capture(const std::string& cmd) {
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, ""};
  std::string out;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {status, out};
}

std::string first_line(const std::string& s) {
  std::size_t cut = s.find('\n');
  return cut == std::string::npos ? s : s.substr(0, cut);
}

Outcome cli_determinism(const std::string& cli) {
  Outcome o;
  if (cli.empty()) {
    o.detail = "no driver binary path supplied (pass it as argv[1])";
    return o;
  }
  const std::vector<std::string> invocations = {
      "transduce --sim sumblock --input nat --take 5",
      "transduce --sim layersum --input heap_bin --take 3",
      "bisim --left nat --right nat --depth 50",
  };
  o.pass = true;
  std::string outputs;
  for (const std::string& args : invocations) {
    std::string cmd = "'" + cli + "' " + args + " 2>/dev/null";
    std::pair<int, std::string> a = run_capture(cmd);
    std::pair<int, std::string> b = run_capture(cmd);
    if (a.second.empty()) {
      o.pass = false;
      o.detail = "no output from: " + args;
      return o;
    }
    if (a != b) {
      o.pass = false;
      o.detail = "repeated runs differ for: " + args;
      return o;
    }
    if (!outputs.empty()) outputs += " | ";
    outputs += first_line(a.second);
  }
  o.detail = "3 invocations byte-identical across runs; outputs: " + outputs;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";

  struct Row {
    std::string name;
    double budget_s;
    bool expect_pass;
    std::function<Outcome()> run;
  };
  std::vector<Row> rows;
  rows.push_back({"sum-block trace", 1.0, false, sum_block_trace});
  rows.push_back({"layer-sum trace", 5.0, true, layer_sum_trace});
  rows.push_back({"choice round trips", 5.0, true, choice_round_trips});
  rows.push_back({"evaluation functoriality", 30.0, true, eval_functoriality});
  rows.push_back({"comonad laws", 30.0, true, comonad_laws});
  rows.push_back({"isomorphism suites", 30.0, true, isomorphism_suites});
  rows.push_back({"eating postconditions", 30.0, true, eating_postconditions});
  rows.push_back({"oracle equivalence", 60.0, true, oracle_equivalence});
  rows.push_back({"laziness and chains", 10.0, true, laziness_and_chains});
  rows.push_back({"cli determinism", 60.0, true,
                  [cli]() { return cli_determinism(cli); }});

  int mismatches = 0;
  std::size_t passed = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    Clock::time_point t0 = Clock::now();
    Outcome o;
    try {
      o = rows[k].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    bool in_budget = secs <= rows[k].budget_s;
    bool pass = o.pass && in_budget;
    if (pass) ++passed;
    std::printf("[%s] %zu. %s: %s (%.2fs%s)\n", pass ? "PASS" : "FAIL", k + 1,
                rows[k].name.c_str(), o.detail.c_str(), secs,
                in_budget ? "" : ", over the time budget");
    std::fflush(stdout);
    if (pass != rows[k].expect_pass) ++mismatches;
  }

  if (mismatches == 0) {
    std::printf(
        "result: %zu/10 criteria pass; criterion 1 fails as documented (its "
        "required trace conflicts with the read schedule asserted by "
        "criterion 9)\n",
        passed);
    return 0;
  }
  std::printf(
      "result: %zu/10 criteria pass; %d criteria deviate from the documented "
      "expectation\n",
      passed, mismatches);
  return 1;
}
