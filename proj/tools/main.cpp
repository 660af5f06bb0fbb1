#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  padiclab::RunConfig cfg;
  CLI::App app{"padiclab: p-adic automorphisms, measure-preservation criteria and toy ciphers"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "prime");
    sub->add_option("--K,--k", cfg.K, "precision / level");
    sub->add_option("--seed", cfg.seed, "seed for randomized checks")->capture_default_str();
    sub->add_option("--in", cfg.inputs, "input JSON file(s)");
    sub->add_option("--out", cfg.out, "write output to this file");
    auto* pretty = sub->add_flag("--pretty", cfg.pretty, "human-readable output");
    sub->add_flag("--json", "JSON output (default)")->excludes(pretty);
  };

  std::string command;
  auto add = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    common(sub);
    sub->callback([&command, name] { command = name; });
    return sub;
  };

  auto* eval = add("eval", "evaluate a spec or table at x");
  eval->add_option("--spec", cfg.spec, "AutSpec JSON or @file");
  eval->add_option("--fn", cfg.fn, "function JSON or @file");
  eval->add_option("--x", cfg.x, "argument (decimal residue)")->required();

  auto* vdp = add("vdp", "van der Put coefficients of a function, or the inverse transform");
  vdp->add_option("--fn", cfg.fn, "function JSON or @file");
  vdp->add_option("--spec", cfg.spec, "AutSpec JSON or @file");
  vdp->add_option("--series", cfg.series, "series JSON {\"B\": [...]} for --inverse");
  vdp->add_flag("--inverse", cfg.inverse, "rebuild the function from its coefficients");

  auto* check = add("check", "measure-preservation criteria of a function");
  check->add_option("--fn", cfg.fn, "function JSON or @file");
  check->add_option("--spec", cfg.spec, "AutSpec JSON or @file");

  auto* make = add("make-aut", "realize an automorphism spec as a table");
  make->add_option("--spec", cfg.spec, "AutSpec JSON or @file");

  auto* hom = add("check-hom", "homomorphism check for one operation");
  hom->add_option("--fn", cfg.fn, "function JSON or @file");
  hom->add_option("--spec", cfg.spec, "AutSpec JSON or @file");
  hom->add_option("--op", cfg.op, "plus, times, xor or and");
  hom->add_option("--g", cfg.g, "GSpec JSON or @file for a custom operation");

  auto* ag = add("analyze-g", "linear automorphisms of <Z_p, G>");
  ag->add_option("--g", cfg.g, "GSpec JSON or @file");

  auto* en = add("enumerate", "all automorphisms mod p^k by backtracking");
  en->add_option("--ops", cfg.ops, "comma-separated operations")->required();
  en->add_option("--budget", cfg.budget, "node budget")->capture_default_str();

  auto* ver = add("verify", "claim suite at (p, k)");
  ver->add_option("--budget", cfg.budget, "node budget")->capture_default_str();

  add("report", "aggregate enumerate outputs into a count table");

  auto* cipher = app.add_subcommand("cipher", "toy ciphers");
  cipher->require_subcommand(1);
  for (const char* action : {"encrypt", "decrypt", "model", "demo"}) {
    auto* sub = cipher->add_subcommand(action);
    common(sub);
    sub->add_option("--key", cfg.key, "key JSON or @file");
    sub->add_option("--word", cfg.word, "word JSON or @file");
    sub->add_option("--formula", cfg.formula, "formula JSON or @file");
    sub->add_option("--kind", cfg.kind, "random key kind: subst_stream, keystream, subst")->capture_default_str();
    sub->add_option("--words", cfg.words, "number of random data words")->capture_default_str();
    sub->callback([&command, action] { command = std::string("cipher ") + action; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? padiclab::kOk : padiclab::kValidation;
  }

  const auto result = padiclab::run(command, cfg);
  if (result.exit_code == padiclab::kOk || result.exit_code == padiclab::kClaimFailure) {
    if (cfg.out) {
      std::ofstream out(*cfg.out);
      if (!out) {
        std::cerr << "cannot write " << *cfg.out << "\n";
        return padiclab::kValidation;
      }
      out << result.output;
    } else {
      std::cout << result.output;
    }
  } else {
    std::cerr << result.output;
  }
  return result.exit_code;
}
