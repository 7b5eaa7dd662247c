#ifndef ITX_CLI_HPP
#define ITX_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include "itx/value.hpp"

namespace itx {

/// Parsed command line for the driver binary.
struct CliConfig {
  std::string command;  ///< list | show | transduce | bisim | laws
  std::string sim;      ///< transduce: simulation name
  std::string input;    ///< transduce / show: behavior name
  std::string left;     ///< bisim operands
  std::string right;
  std::string suite;    ///< laws: suite name (empty = every suite)
  std::size_t take = 0;                 ///< stream elements (0 = use depth)
  std::size_t depth = 20;               ///< truncation / comparison depth
  bool depth_given = false;             ///< laws: a --depth flag was present
  std::size_t budget = kDefaultBudget;  ///< per-axis enumeration bound
  std::string format = "text";          ///< text | json
  std::uint64_t seed = 1;               ///< seed for seeded fixtures
};

/// Runs one already-parsed command against the fixture registries, writing
/// results to `out` and diagnostics to `err`. Output is a pure function of
/// the config. Returns the exit status: 0 success, 1 a law failed or the
/// behaviors are not related, 2 usage error (unknown names list candidates).
int run_command(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a CliConfig and runs it. Exit statuses as above; parse
/// problems report to `err`, --help prints to `out` and returns 0.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace itx

#endif  // ITX_CLI_HPP
