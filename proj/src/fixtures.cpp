#include "itx/fixtures.hpp"

#include <memory>
#include <utility>

namespace itx {

InteractionSystem w_stream() {
  InteractionSystem w;
  w.name = "stream";
  w.actions = [](const Value&) { return Enumeration::of({Value::unit()}); };
  w.responses = [](const Value&, const Value&) { return Enumeration::naturals(); };
  w.next = [](const Value&, const Value&, const Value&) { return Value::unit(); };
  return w;
}

InteractionSystem w_increasing() {
  InteractionSystem w;
  w.name = "increasing";
  w.actions = [](const Value&) { return Enumeration::of({Value::unit()}); };
  w.responses = [](const Value& i, const Value&) {
    std::uint64_t floor = i.as_nat();
    return Enumeration::from_nth(
        [floor](std::uint64_t k) -> std::optional<Value> {
          return Value::nat(floor + 1 + k);
        },
        false);
  };
  w.next = [](const Value&, const Value&, const Value& d) { return d; };
  return w;
}

InteractionSystem w_bintree() {
  InteractionSystem w;
  w.name = "bintree";
  w.actions = [](const Value&) {
    return Enumeration::of({Value::nat(0), Value::nat(1)});
  };
  w.responses = [](const Value&, const Value&) { return Enumeration::naturals(); };
  w.next = [](const Value&, const Value&, const Value&) { return Value::unit(); };
  return w;
}

InteractionSystem w_fbtree() {
  InteractionSystem w;
  w.name = "fbtree";
  w.actions = [](const Value&) {
    auto fiber = [](const Value& k) -> Enumeration {
      std::uint64_t width = k.as_nat();
      return Enumeration::from_nth(
          [width](std::uint64_t m) -> std::optional<Value> {
            if (m >= width) return std::nullopt;
            return Value::nat(m);
          },
          true);
    };
    return Enumeration::sigma(Enumeration::naturals(), fiber);
  };
  w.responses = [](const Value&, const Value&) { return Enumeration::naturals(); };
  w.next = [](const Value&, const Value&, const Value&) { return Value::unit(); };
  return w;
}

InteractionSystem w_finite() {
  InteractionSystem w;
  w.name = "finite";
  w.actions = [](const Value& i) {
    if (i.as_nat() == 0)
      return Enumeration::of({Value::nat(0), Value::nat(1)});
    return Enumeration::of({Value::nat(0)});
  };
  w.responses = [](const Value& i, const Value& a) {
    std::uint64_t key = i.as_nat() * 10 + a.as_nat();
    switch (key) {
      case 0:  // state 0, action 0
        return Enumeration::of({Value::nat(0), Value::nat(1)});
      case 1:  // state 0, action 1
        return Enumeration::of({Value::nat(0)});
      case 10:  // state 1, action 0
        return Enumeration::of({Value::nat(0), Value::nat(1)});
      default:
        throw ShapeError("finite system: no such state/action");
    }
  };
  w.next = [](const Value& i, const Value& a, const Value& d) {
    std::uint64_t key = i.as_nat() * 100 + a.as_nat() * 10 + d.as_nat();
    switch (key) {
      case 0:  // (0,0,0)
        return Value::nat(0);
      case 1:  // (0,0,1)
        return Value::nat(1);
      case 10:  // (0,1,0)
        return Value::nat(1);
      case 100:  // (1,0,0)
        return Value::nat(1);
      case 101:  // (1,0,1)
        return Value::nat(0);
      default:
        throw ShapeError("finite system: no such transition");
    }
  };
  return w;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t rand_bin_edge_seed(std::uint64_t x, std::uint64_t b) {
  return mix64(x + 2 * b + 1);
}

std::uint64_t rand_bin_label(std::uint64_t x, std::uint64_t b) {
  return rand_bin_edge_seed(x, b) % 10;
}

Behavior nat_stream() {
  auto base = std::make_shared<const InteractionSystem>(w_stream());
  auto out = std::make_shared<const InteractionSystem>(dual(*base));
  Behavior::Step step = [base](const Value&, const Value& seed) -> SemStep<Value> {
    std::uint64_t k = seed.as_nat();
    Value choice = Value::fn([k](const Value&) { return Value::nat(k); },
                             base->actions(Value::unit()));
    return SemStep<Value>{choice, [k](const Value&) { return Value::nat(k + 1); }};
  };
  return Behavior(out, Value::unit(), Value::nat(0), step);
}

Behavior inc_stream() {
  auto base = std::make_shared<const InteractionSystem>(w_increasing());
  auto out = std::make_shared<const InteractionSystem>(dual(*base));
  Behavior::Step step = [base](const Value& i, const Value&) -> SemStep<Value> {
    std::uint64_t next = i.as_nat() + 1;
    Value choice = Value::fn([next](const Value&) { return Value::nat(next); },
                             base->actions(i));
    return SemStep<Value>{choice, [](const Value&) { return Value::unit(); }};
  };
  return Behavior(out, Value::nat(0), Value::unit(), step);
}

Behavior heap_bin() {
  auto base = std::make_shared<const InteractionSystem>(w_bintree());
  auto out = std::make_shared<const InteractionSystem>(dual(*base));
  Behavior::Step step = [base](const Value&, const Value& seed) -> SemStep<Value> {
    std::uint64_t k = seed.as_nat();
    Value choice = Value::fn(
        [k](const Value& b) { return Value::nat(2 * k + 1 + b.as_nat()); },
        base->actions(Value::unit()));
    return SemStep<Value>{choice, [k](const Value& b) {
                            return Value::nat(2 * k + 1 + b.as_nat());
                          }};
  };
  return Behavior(out, Value::unit(), Value::nat(0), step);
}

Behavior fin_walk() {
  auto base = std::make_shared<const InteractionSystem>(w_finite());
  auto out = std::make_shared<const InteractionSystem>(dual(*base));
  Behavior::Step step = [base](const Value& i, const Value&) -> SemStep<Value> {
    auto responses = base->responses;
    Value choice = Value::fn(
        [responses, i](const Value& a) { return *responses(i, a).nth(0); },
        base->actions(i));
    return SemStep<Value>{choice, [](const Value&) { return Value::unit(); }};
  };
  return Behavior(out, Value::nat(0), Value::unit(), step);
}

Behavior rand_stream(std::uint64_t seed) {
  auto base = std::make_shared<const InteractionSystem>(w_stream());
  auto out = std::make_shared<const InteractionSystem>(dual(*base));
  Behavior::Step step = [base](const Value&, const Value& s) -> SemStep<Value> {
    std::uint64_t x = s.as_nat();
    std::uint64_t digit = mix64(x) % 10;
    Value choice = Value::fn([digit](const Value&) { return Value::nat(digit); },
                             base->actions(Value::unit()));
    return SemStep<Value>{choice,
                          [x](const Value&) { return Value::nat(mix64(x)); }};
  };
  return Behavior(out, Value::unit(), Value::nat(seed), step);
}

Behavior rand_bin(std::uint64_t seed) {
  auto base = std::make_shared<const InteractionSystem>(w_bintree());
  auto out = std::make_shared<const InteractionSystem>(dual(*base));
  Behavior::Step step = [base](const Value&, const Value& s) -> SemStep<Value> {
    std::uint64_t x = s.as_nat();
    Value choice = Value::fn(
        [x](const Value& b) { return Value::nat(rand_bin_label(x, b.as_nat())); },
        base->actions(Value::unit()));
    return SemStep<Value>{choice, [x](const Value& b) {
                            return Value::nat(
                                rand_bin_edge_seed(x, b.as_nat()));
                          }};
  };
  return Behavior(out, Value::unit(), Value::nat(seed), step);
}

LinearSim sim_map(std::function<std::uint64_t(std::uint64_t)> h) {
  LinearSim s;
  s.source = w_stream();
  s.target = w_stream();
  s.rho = [h](const Value&, const Value&, const Value& witness,
              const Value& a2) -> SimStep {
    return SimStep{a2, [h, witness](const Value& d1) {
                     return std::make_pair(Value::nat(h(d1.as_nat())), witness);
                   }};
  };
  return s;
}

LinearSim sim_succ() {
  return sim_map([](std::uint64_t n) { return n + 1; });
}

LinearSim sim_double() {
  return sim_map([](std::uint64_t n) { return 2 * n; });
}

LinearSim sim_mirror() {
  LinearSim s;
  s.source = w_bintree();
  s.target = w_bintree();
  s.rho = [](const Value&, const Value&, const Value& witness,
             const Value& b) -> SimStep {
    Value flipped = Value::nat(1 - b.as_nat());
    return SimStep{flipped, [witness](const Value& d1) {
                     return std::make_pair(d1, witness);
                   }};
  };
  return s;
}

namespace {

Value sumblock_chain(const std::shared_ptr<const InteractionSystem>& base,
                     std::uint64_t remaining) {
  if (remaining == 0) return wft_leaf(Value::unit());
  auto children = [base, remaining](const Value&) {
    return sumblock_chain(base, remaining - 1);
  };
  return wft_node(*base, Value::unit(), Value::unit(), children);
}

}  // namespace

GeneralSim sim_sumblock() {
  auto base = std::make_shared<const InteractionSystem>(w_stream());
  auto rho = [base](const Value&, const Value&, const Value& witness,
                    const Value&) -> SimStep {
    // Read the head; if it is n, read n more elements.
    auto children = [base](const Value& head) {
      return sumblock_chain(base, head.as_nat());
    };
    Value tree = wft_node(*base, Value::unit(), Value::unit(), children);
    auto then = [witness](const Value& path) {
      std::uint64_t head = path.first().as_nat();
      std::uint64_t sum = 0;
      Value rest = path.second();
      for (std::uint64_t k = 0; k < head; ++k) {
        sum += rest.first().as_nat();
        rest = rest.second();
      }
      return std::make_pair(Value::nat(sum), witness);
    };
    return SimStep{tree, then};
  };
  return make_general(w_stream(), w_stream(), rho);
}

LayeredSim sim_layersum() {
  InteractionSystem bin = w_bintree();
  InteractionSystem stream = w_stream();
  Value root = Value::unit();
  auto bin_d = std::make_shared<const InteractionSystem>(dual(bin));
  auto stream_d = std::make_shared<const InteractionSystem>(dual(stream));
  auto lay1 = std::make_shared<const InteractionSystem>(layered(*bin_d, root));
  auto v1 = std::make_shared<const InteractionSystem>(dual(*lay1));
  auto bin_actions = std::make_shared<const Enumeration>(
      bin.actions(Value::unit()));
  auto stream_actions = std::make_shared<const Enumeration>(
      stream.actions(Value::unit()));
  auto rho = [bin_d, stream_d, lay1, v1, bin_actions, stream_actions, root](
                 const Value& alpha1, const Value& alpha2, const Value& witness,
                 const Value&) -> SimStep {
    // Request exactly the next complete input layer.
    Value ask = Value::fn([](const Value&) { return Value::unit(); },
                          lay1->actions(alpha1));
    Value tree = wft_request(*v1, alpha1, ask);
    auto then = [bin_d, stream_d, bin_actions, stream_actions, root, alpha1,
                 alpha2, witness](const Value& path) {
      Value layer = path.first();
      // Total of every answer of every frontier position's choice function.
      std::uint64_t total = 0;
      std::vector<Value> positions =
          sharp_positions(*bin_d, root, alpha1).exhaust(1u << 16);
      std::vector<Value> branches = bin_actions->exhaust(kDefaultBudget);
      for (const Value& beta : positions) {
        Value cf = layer.apply(beta);
        for (const Value& b : branches) total += cf.apply(b).as_nat();
      }
      Value answer = Value::fn(
          [total](const Value&) { return Value::nat(total); }, *stream_actions);
      Value out_layer = Value::fn([answer](const Value&) { return answer; },
                                  sharp_positions(*stream_d, root, alpha2));
      return std::make_pair(out_layer, witness);
    };
    return SimStep{tree, then};
  };
  return make_layered_sim(bin, root, stream, root, rho);
}

std::vector<std::uint64_t> oracle_map(
    const std::function<std::uint64_t(std::uint64_t)>& element,
    const std::function<std::uint64_t(std::uint64_t)>& h, std::size_t count) {
  std::vector<std::uint64_t> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(h(element(k)));
  return out;
}

std::vector<std::uint64_t> oracle_sumblock(
    const std::function<std::uint64_t(std::uint64_t)>& element,
    std::size_t count) {
  std::vector<std::uint64_t> out;
  out.reserve(count);
  std::uint64_t cursor = 0;
  while (out.size() < count) {
    std::uint64_t head = element(cursor++);
    std::uint64_t sum = 0;
    for (std::uint64_t k = 0; k < head; ++k) sum += element(cursor++);
    out.push_back(sum);
  }
  return out;
}

std::vector<std::uint64_t> oracle_layer_sums(
    const std::function<std::uint64_t(const std::vector<int>& word)>& edge_label,
    std::size_t layers) {
  std::vector<std::uint64_t> out;
  out.reserve(layers);
  std::vector<std::vector<int>> frontier = {{}};
  for (std::size_t m = 0; m < layers; ++m) {
    std::uint64_t total = 0;
    std::vector<std::vector<int>> next;
    next.reserve(frontier.size() * 2);
    for (const std::vector<int>& node : frontier) {
      for (int b = 0; b < 2; ++b) {
        std::vector<int> word = node;
        word.push_back(b);
        total += edge_label(word);
        next.push_back(std::move(word));
      }
    }
    out.push_back(total);
    frontier = std::move(next);
  }
  return out;
}

std::uint64_t heap_edge_label(const std::vector<int>& word) {
  std::uint64_t k = 0;
  for (int b : word) k = 2 * k + 1 + static_cast<std::uint64_t>(b);
  return k;
}

std::uint64_t rand_bin_edge_label(std::uint64_t seed,
                                  const std::vector<int>& word) {
  std::uint64_t x = seed;
  for (std::size_t i = 0; i + 1 < word.size(); ++i)
    x = rand_bin_edge_seed(x, static_cast<std::uint64_t>(word[i]));
  return rand_bin_label(x, static_cast<std::uint64_t>(word.back()));
}

namespace {

std::uint64_t fnv1a(const Bytes& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) h = (h ^ c) * 1099511628211ULL;
  return h;
}

}  // namespace

Value random_tree(const InteractionSystem& w, const Value& state,
                  std::uint64_t seed, std::size_t max_depth) {
  std::uint64_t r = mix64(seed);
  if (max_depth == 0 || r % 4 == 0) return wft_leaf(Value::nat(r % 97));
  Enumeration actions = w.actions(state);
  std::size_t available = 0;
  while (available < kDefaultBudget && actions.nth(available).has_value())
    ++available;
  if (available == 0) return wft_leaf(Value::nat(r % 97));
  Value action = *actions.nth(mix64(r ^ 0x51ed2701ULL) % available);
  auto base = std::make_shared<const InteractionSystem>(w);
  std::uint64_t child_base = mix64(r ^ 0xabcdULL);
  auto children = [base, state, action, child_base, max_depth](const Value& d) {
    std::uint64_t mixed = child_base ^ fnv1a(d.encode());
    return random_tree(*base, base->next(state, action, d), mixed,
                       max_depth - 1);
  };
  return wft_node(w, state, action, children);
}

ShapeReport stream_transducer_shape(const GeneralSim& sim, const Behavior& input,
                                    std::size_t outputs) {
  ProbeLog log;
  Behavior instrumented = probed(input, log);
  Behavior out = eval_general(sim, Value::unit(), Value::unit(), instrumented);
  ShapeReport report;
  const auto& base = out.system().dual_base;
  if (base == nullptr) return report;
  Behavior current = out;
  std::size_t seen = 0;
  for (std::size_t k = 0; k < outputs; ++k) {
    std::optional<Value> only = base->actions(current.state()).nth(0);
    if (!only.has_value()) return report;
    Unfolding u = current.unfold();
    u.action.apply(*only);
    std::size_t now = log.count();
    report.reads_per_output.push_back(now - seen);
    seen = now;
    current = u.next(*only);
  }
  report.chain_ok = log.is_chain();
  return report;
}

const std::vector<std::pair<std::string, InteractionSystem>>& system_registry() {
  static const std::vector<std::pair<std::string, InteractionSystem>> registry =
      {{"stream", w_stream()},
       {"increasing", w_increasing()},
       {"bintree", w_bintree()},
       {"fbtree", w_fbtree()},
       {"finite", w_finite()}};
  return registry;
}

const std::vector<BehaviorEntry>& behavior_registry() {
  static const std::vector<BehaviorEntry> registry = {
      {"nat", "stream", false, [](std::uint64_t) { return nat_stream(); }},
      {"inc", "increasing", false, [](std::uint64_t) { return inc_stream(); }},
      {"heap_bin", "bintree", false, [](std::uint64_t) { return heap_bin(); }},
      {"fin_walk", "finite", false, [](std::uint64_t) { return fin_walk(); }},
      {"rand_stream", "stream", true,
       [](std::uint64_t seed) { return rand_stream(seed); }},
      {"rand_bin", "bintree", true,
       [](std::uint64_t seed) { return rand_bin(seed); }},
  };
  return registry;
}

const std::vector<SimEntry>& sim_registry() {
  static const std::vector<SimEntry> registry = {
      {"id", "linear", "*", "*",
       [](const Behavior& input) {
         if (input.system().dual_base == nullptr)
           throw ShapeError(
               "identity evaluation needs a behavior over a dual system");
         LinearSim s = sim_id(*input.system().dual_base);
         return eval_linear(s, input.state(), Value::unit(), input);
       }},
      {"succ", "linear", "stream", "stream",
       [](const Behavior& input) {
         return eval_linear(sim_succ(), Value::unit(), Value::unit(), input);
       }},
      {"double", "linear", "stream", "stream",
       [](const Behavior& input) {
         return eval_linear(sim_double(), Value::unit(), Value::unit(), input);
       }},
      {"mirror", "linear", "bintree", "bintree",
       [](const Behavior& input) {
         return eval_linear(sim_mirror(), Value::unit(), Value::unit(), input);
       }},
      {"sumblock", "general", "stream", "stream",
       [](const Behavior& input) {
         return eval_general(sim_sumblock(), Value::unit(), Value::unit(),
                             input);
       }},
      {"layersum", "layered", "bintree", "stream",
       [](const Behavior& input) {
         return eval_layered(sim_layersum(), Value::unit(), input);
       }},
  };
  return registry;
}

const BehaviorEntry* find_behavior(const std::string& name) {
  for (const BehaviorEntry& e : behavior_registry())
    if (e.name == name) return &e;
  return nullptr;
}

const SimEntry* find_sim(const std::string& name) {
  for (const SimEntry& e : sim_registry())
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace itx
