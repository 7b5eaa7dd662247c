#ifndef ITX_FIXTURES_HPP
#define ITX_FIXTURES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "itx/behavior.hpp"
#include "itx/interaction.hpp"
#include "itx/layering.hpp"
#include "itx/simulate.hpp"
#include "itx/wftree.hpp"

namespace itx {

/// Reference systems.
InteractionSystem w_stream();      ///< one action, responses 0,1,2,…
InteractionSystem w_increasing();  ///< states ℕ, responses strictly above
InteractionSystem w_bintree();     ///< two actions (branches), responses ℕ
InteractionSystem w_fbtree();      ///< actions ⟨k, m<k⟩, responses ℕ
InteractionSystem w_finite();      ///< two states, everything enumerable

/// Reference behaviors (each over the dual of its base system).
Behavior nat_stream();                      ///< 0, 1, 2, …
Behavior inc_stream();                      ///< 1, 2, 3, … from state 0
Behavior heap_bin();                        ///< branch labels 2k+1, 2k+2
Behavior fin_walk();                        ///< first-response walk
Behavior rand_stream(std::uint64_t seed);   ///< digits 0..9
Behavior rand_bin(std::uint64_t seed);      ///< digit-labelled branches

/// splitmix64 finalizer — the single PRNG primitive behind rand_*.
std::uint64_t mix64(std::uint64_t x);
/// Seed and label of the branch-b edge out of a node with seed x (rand_bin).
std::uint64_t rand_bin_edge_seed(std::uint64_t x, std::uint64_t b);
std::uint64_t rand_bin_label(std::uint64_t x, std::uint64_t b);

/// Reference simulations.
LinearSim sim_map(std::function<std::uint64_t(std::uint64_t)> h);  ///< stream map
LinearSim sim_succ();
LinearSim sim_double();
LinearSim sim_mirror();      ///< swaps branches, keeps labels
GeneralSim sim_sumblock();   ///< head 0 → 0; head n → sum of the next n
LayeredSim sim_layersum();   ///< output element m = sum of input layer m

/// Independent expected-output calculators (plain cursor arithmetic; they
/// never touch systems, trees or simulations).
std::vector<std::uint64_t> oracle_map(
    const std::function<std::uint64_t(std::uint64_t)>& element,
    const std::function<std::uint64_t(std::uint64_t)>& h, std::size_t count);
std::vector<std::uint64_t> oracle_sumblock(
    const std::function<std::uint64_t(std::uint64_t)>& element,
    std::size_t count);
/// Sum of the labels of every depth-m edge, m = 1..layers, for a binary tree
/// whose edges are addressed by branch words (most significant first).
std::vector<std::uint64_t> oracle_layer_sums(
    const std::function<std::uint64_t(const std::vector<int>& word)>& edge_label,
    std::size_t layers);

/// Edge labels of the reference binary behaviors, by branch word.
std::uint64_t heap_edge_label(const std::vector<int>& word);
std::uint64_t rand_bin_edge_label(std::uint64_t seed, const std::vector<int>& word);

/// Deterministic random request tree over `w` rooted at `state`: node action
/// drawn from the (budget-bounded) action enumeration, leaves carry small nat
/// payloads, child seeds mix the parent seed with the response encoding.
Value random_tree(const InteractionSystem& w, const Value& state,
                  std::uint64_t seed, std::size_t max_depth);

/// Output/read shape of a stream transducer: wraps the input with a probe,
/// drives `outputs` elements, and reports the reads per output plus whether
/// all input queries formed one downward chain.
struct ShapeReport {
  std::vector<std::size_t> reads_per_output;
  bool chain_ok = false;
};
ShapeReport stream_transducer_shape(const GeneralSim& sim, const Behavior& input,
                                    std::size_t outputs);

/// Name registry used by the command-line driver and the law suites.
struct BehaviorEntry {
  std::string name;
  std::string over;  ///< base system name (behavior runs over its dual)
  bool seeded = false;
  std::function<Behavior(std::uint64_t seed)> make;
};

struct SimEntry {
  std::string name;
  std::string kind;    ///< "linear" | "general" | "layered"
  std::string source;  ///< required input base name ("*" accepts any)
  std::string target;
  std::function<Behavior(const Behavior& input)> eval;
};

const std::vector<std::pair<std::string, InteractionSystem>>& system_registry();
const std::vector<BehaviorEntry>& behavior_registry();
const std::vector<SimEntry>& sim_registry();

const BehaviorEntry* find_behavior(const std::string& name);
const SimEntry* find_sim(const std::string& name);

}  // namespace itx

#endif  // ITX_FIXTURES_HPP
