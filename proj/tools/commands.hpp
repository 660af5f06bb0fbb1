#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "padic/lipschitz.hpp"

namespace padiclab {

enum ExitCode : int { kOk = 0, kValidation = 1, kClaimFailure = 2, kBudget = 3 };

struct RunConfig {
  std::uint32_t p = 0;
  unsigned K = 0;
  std::uint64_t seed = 0;
  std::uint64_t budget = 50'000'000;
  bool pretty = false;
  std::vector<std::string> inputs;  // --in
  std::optional<std::string> out;   // --out

  // Subcommand-specific arguments, raw JSON text or "@path".
  std::string spec, fn, g, key, word, formula, series;
  std::string x;
  std::string op;
  std::string ops;
  std::string kind = "keystream";
  bool inverse = false;
  unsigned words = 2;
};

struct CommandResult {
  int exit_code = kOk;
  std::string output;  // JSON (or the rendered text with --pretty), newline-terminated
};

CommandResult cmd_eval(const RunConfig& cfg);
CommandResult cmd_vdp(const RunConfig& cfg);
CommandResult cmd_check(const RunConfig& cfg);
CommandResult cmd_make_aut(const RunConfig& cfg);
CommandResult cmd_check_hom(const RunConfig& cfg);
CommandResult cmd_analyze_g(const RunConfig& cfg);
CommandResult cmd_enumerate(const RunConfig& cfg);
CommandResult cmd_verify(const RunConfig& cfg);
CommandResult cmd_report(const RunConfig& cfg);
CommandResult cmd_cipher(const std::string& action, const RunConfig& cfg);

/// Dispatches by subcommand name ("cipher encrypt" etc.) and maps
/// exceptions to exit codes with the message on `output`.
CommandResult run(const std::string& command, const RunConfig& cfg);

struct EquivalenceStats {
  std::uint64_t functions = 0;
  std::uint64_t preserving = 0;
  std::uint64_t disagreements = 0;
  bool exhaustive = false;
  std::optional<padic::kernels::Table> first_disagreement;
};

/// Cross-checks the vdp criterion, the coordinate criterion and bijectivity
/// mod every p^k.  Exhaustive over all sub-function tables when there are at
/// most `exhaustive_limit` of them, otherwise `samples` seeded random maps.
EquivalenceStats criterion_equivalence(const padic::PrimeContext& ctx, std::uint64_t samples,
                                       std::uint64_t seed, std::uint64_t exhaustive_limit);

/// Number of functions defined by sub-function tables, or nullopt above 2^63.
std::optional<std::uint64_t> subfunction_space_size(std::uint32_t p, unsigned K);

}  // namespace padiclab
