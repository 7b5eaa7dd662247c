#ifndef ITX_LAWS_HPP
#define ITX_LAWS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "itx/value.hpp"

namespace itx {

/// One named check: a verdict plus a short explanation when it fails.
struct LawCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Shared knobs for every suite: observation depths, sample counts, and the
/// budget used whenever functions are compared extensionally.
struct LawParams {
  std::size_t stream_depth = 10;  ///< observation depth along chains
  std::size_t tree_depth = 6;     ///< observation depth through branching
  std::size_t samples = 5;        ///< seeded inputs / random trees per check
  std::size_t layers = 3;         ///< layers driven in layered checks
  Budget budget{};                ///< function-comparison budget
  std::uint64_t seed = 1;         ///< base seed for sampled checks
};

/// Suite names in presentation order.
const std::vector<std::string>& law_suite_names();

/// Runs one suite. Throws ShapeError for unknown suite names.
std::vector<LawCheck> run_law_suite(const std::string& suite,
                                    const LawParams& params);

/// Runs every suite; check names come back prefixed with "suite/".
std::vector<LawCheck> run_all_law_suites(const LawParams& params);

}  // namespace itx

#endif  // ITX_LAWS_HPP
