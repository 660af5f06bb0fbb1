#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "padic/automorph.hpp"
#include "padic/cipher.hpp"
#include "padic/json_io.hpp"
#include "padic/oracle.hpp"

namespace padiclab {

using nlohmann::json;
using namespace padic;
namespace jio = padic::json_io;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_arg(const std::string& text) {
  if (!text.empty() && text.front() == '@') return json::parse(read_text(text.substr(1)));
  return json::parse(text);
}

/// The named argument, or the single --in file when the argument is absent.
json primary_input(const std::string& arg, const RunConfig& cfg, const char* what) {
  if (!arg.empty()) return parse_arg(arg);
  if (cfg.inputs.size() == 1) return json::parse(read_text(cfg.inputs.front()));
  throw UsageError(std::string("missing ") + what + " (pass it inline, as @file, or via --in)");
}

PrimeContext context(const RunConfig& cfg) {
  if (cfg.p == 0) throw UsageError("--p is required");
  if (cfg.K == 0) throw UsageError("--K is required");
  return PrimeContext(cfg.p, cfg.K);
}

PrimeContext context_from(const json& j, const RunConfig& cfg) {
  if (j.is_object() && j.contains("p") && j.contains("K"))
    return PrimeContext(j.at("p").get<std::uint32_t>(), j.at("K").get<unsigned>());
  return context(cfg);
}

// {"table": [...]} with p and K from the object or, failing that, the flags.
LipschitzFn table_function(const json& j, const RunConfig& cfg) {
  const auto ctx = context_from(j, cfg);
  return LipschitzFn::from_table(ctx, j.at("table").get<Table>(), j.value("provenance", std::string{}));
}

CommandResult emit(json j, const RunConfig& cfg, int code = kOk) {
  j["seed"] = cfg.seed;
  return {code, (cfg.pretty ? j.dump(2) : j.dump()) + "\n"};
}

LipschitzFn function_arg(const RunConfig& cfg) {
  const auto j = primary_input(cfg.fn.empty() ? cfg.spec : cfg.fn, cfg, "function or spec");
  if (j.contains("table")) return table_function(j, cfg);
  if (j.contains("family")) {
    const auto ctx = context(cfg);
    return realize(jio::spec_from_json(j, ctx), ctx);
  }
  throw UsageError("expected a function {\"table\": ...} or a spec {\"family\": ...}");
}

std::vector<OpKind> parse_ops(const std::string& text) {
  std::vector<OpKind> ops;
  std::stringstream ss(text);
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (name.empty()) continue;
    auto op = parse_op(name);
    if (std::none_of(ops.begin(), ops.end(), [&](const OpKind& o) { return o.tag == op.tag; }))
      ops.push_back(op);
  }
  if (ops.empty()) throw UsageError("--ops needs at least one of plus, times, xor, and");
  return ops;
}

const char* status(bool ok) { return ok ? "PASS" : "FAIL"; }

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, bool& overflow) {
  if (a != 0 && b > UINT64_C(0x7fffffffffffffff) / a) overflow = true;
  return a * b;
}

LipschitzFn decode_subfunctions(const PrimeContext& ctx, std::uint64_t index) {
  const auto p = ctx.p();
  std::uint64_t maps = 1;
  for (std::uint32_t i = 0; i < p; ++i) maps *= p;
  std::vector<std::vector<std::vector<Digit>>> levels(ctx.K());
  std::uint64_t count = 1;
  for (unsigned k = 0; k < ctx.K(); ++k, count *= p) {
    levels[k].resize(count);
    for (auto& phi : levels[k]) {
      auto code = index % maps;
      index /= maps;
      phi.resize(p);
      for (auto& v : phi) {
        v = static_cast<Digit>(code % p);
        code /= p;
      }
    }
  }
  return from_subfunctions(ctx, levels, "subfunctions");
}

bool criteria_agree(const LipschitzFn& f, bool& preserving) {
  const bool vdp = preserves_measure_vdp(f).holds;
  const bool coord = preserves_measure_coord(f).holds;
  const bool bij = is_bijective_all(f);
  preserving = bij;
  return vdp == coord && coord == bij;
}

json claim(const std::string& name, bool ok, json detail = json::object()) {
  detail["claim"] = name;
  detail["status"] = status(ok);
  return detail;
}

std::string render_verify(const json& j) {
  std::ostringstream os;
  os << "verify p=" << j["p"] << " k=" << j["k"] << " seed=" << j["seed"] << "\n";
  for (const auto& c : j["claims"]) os << "  " << c["status"].get<std::string>() << "  " << c["claim"].get<std::string>() << "\n";
  for (const auto& f : j["findings"]) os << "  NOTE  " << f["finding"].get<std::string>() << ": " << f["summary"].get<std::string>() << "\n";
  os << (j["all_pass"].get<bool>() ? "all claims PASS" : "some claims FAIL") << "\n";
  return os.str();
}

std::string render_report(const json& j) {
  std::ostringstream os;
  os << "| p | k | ops | count |\n|---|---|---|---|\n";
  for (const auto& r : j["rows"])
    os << "| " << r["p"] << " | " << r["k"] << " | " << r["ops"].get<std::string>() << " | " << r["count"] << " |\n";
  return os.str();
}

}  // namespace

std::optional<std::uint64_t> subfunction_space_size(std::uint32_t p, unsigned K) {
  bool overflow = false;
  std::uint64_t maps = 1;
  for (std::uint32_t i = 0; i < p; ++i) maps = checked_mul(maps, p, overflow);
  std::uint64_t subfunctions = 0, level = 1;
  for (unsigned k = 0; k < K; ++k) {
    subfunctions += level;
    level = checked_mul(level, p, overflow);
  }
  std::uint64_t total = 1;
  for (std::uint64_t i = 0; i < subfunctions && !overflow; ++i) total = checked_mul(total, maps, overflow);
  if (overflow) return std::nullopt;
  return total;
}

EquivalenceStats criterion_equivalence(const PrimeContext& ctx, std::uint64_t samples, std::uint64_t seed,
                                       std::uint64_t exhaustive_limit) {
  EquivalenceStats stats;
  const auto space = subfunction_space_size(ctx.p(), ctx.K());
  stats.exhaustive = space && *space <= exhaustive_limit;
  const std::uint64_t n = stats.exhaustive ? *space : samples;

  std::vector<LipschitzFn> sampled;
  if (!stats.exhaustive) {
    // Half uniform over the measure-preserving class, half with occasional
    // non-bijective sub-functions so both outcomes are exercised.
    std::mt19937_64 rng(seed);
    sampled.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) sampled.push_back(random_lipschitz(ctx, rng, i % 2 == 0 ? 1.0 : 0.95));
  }

  std::uint64_t preserving = 0, disagreements = 0;
  std::int64_t first = -1;
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : preserving, disagreements)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    const auto f = stats.exhaustive ? decode_subfunctions(ctx, static_cast<std::uint64_t>(i)) : sampled[i];
    bool pres = false;
    if (!criteria_agree(f, pres)) {
      ++disagreements;
#pragma omp critical(first_disagreement)
      if (first < 0 || i < first) first = i;
    }
    preserving += pres;
  }
  stats.functions = n;
  stats.preserving = preserving;
  stats.disagreements = disagreements;
  if (first >= 0)
    stats.first_disagreement =
        stats.exhaustive ? decode_subfunctions(ctx, static_cast<std::uint64_t>(first)).table() : sampled[first].table();
  return stats;
}

CommandResult cmd_eval(const RunConfig& cfg) {
  if (cfg.x.empty()) throw UsageError("--x is required");
  const auto j = primary_input(cfg.fn.empty() ? cfg.spec : cfg.fn, cfg, "function or spec");
  std::optional<PadicInt> value;
  PrimeContext ctx = context_from(j, cfg);
  const auto x = jio::residue_from_json(cfg.x.front() == '{' ? json::parse(cfg.x) : json(cfg.x), ctx);
  if (j.contains("table")) {
    value = table_function(j, cfg)(x);
  } else if (j.contains("family")) {
    value = evaluate(jio::spec_from_json(j, ctx), x);
  } else {
    throw UsageError("expected a function {\"table\": ...} or a spec {\"family\": ...}");
  }
  return emit({{"p", ctx.p()}, {"K", ctx.K()}, {"x", x.to_string()}, {"value", value->to_string()},
               {"digits", value->digits()}},
              cfg);
}

CommandResult cmd_vdp(const RunConfig& cfg) {
  if (cfg.inverse) {
    const auto j = primary_input(cfg.series, cfg, "series");
    const auto ctx = context_from(j, cfg);
    return emit(jio::to_json(vdp_inverse(jio::series_from_json(j, ctx))), cfg);
  }
  return emit(jio::to_json(vdp_transform(function_arg(cfg))), cfg);
}

CommandResult cmd_check(const RunConfig& cfg) {
  std::optional<LipschitzFn> f;
  try {
    f = function_arg(cfg);
  } catch (const CompatibilityViolation& v) {
    return emit({{"tower_compatible", false}, {"violation", {{"x", v.x}, {"y", v.y}, {"k", v.k}}}}, cfg,
                kValidation);
  }
  json bij = json::array();
  for (unsigned k = 1; k <= f->ctx().K(); ++k) bij.push_back(is_bijective_mod(*f, k));
  const auto vdp = preserves_measure_vdp(*f);
  const auto coord = preserves_measure_coord(*f);
  const bool all = is_bijective_all(*f);
  return emit({{"p", f->ctx().p()},
               {"K", f->ctx().K()},
               {"tower_compatible", true},
               {"bijective_mod", bij},
               {"vdp", jio::to_json(vdp)},
               {"coord", jio::to_json(coord)},
               {"measure_preserving", all},
               {"criteria_agree", vdp.holds == all && coord.holds == all}},
              cfg);
}

CommandResult cmd_make_aut(const RunConfig& cfg) {
  const auto ctx = context(cfg);
  const auto spec = jio::spec_from_json(primary_input(cfg.spec, cfg, "spec"), ctx);
  auto j = jio::to_json(realize(spec, ctx));
  j["spec"] = jio::to_json(spec);
  return emit(std::move(j), cfg);
}

CommandResult cmd_check_hom(const RunConfig& cfg) {
  const auto f = function_arg(cfg);
  OpKind op = OpKind::plus();
  if (!cfg.g.empty()) {
    op = OpKind::custom(jio::gspec_from_json(parse_arg(cfg.g), f.ctx()));
  } else if (!cfg.op.empty()) {
    op = parse_op(cfg.op);
  } else {
    throw UsageError("pass --op or --g");
  }
  auto j = jio::to_json(is_homomorphism(f, op, cfg.seed));
  j["op"] = op_name(op);
  j["automorphism"] = is_automorphism(f, {op}, cfg.seed);
  return emit(std::move(j), cfg);
}

CommandResult cmd_analyze_g(const RunConfig& cfg) {
  const auto ctx = context(cfg);
  const auto g = jio::gspec_from_json(primary_input(cfg.g, cfg, "G spec"), ctx);
  auto j = jio::to_json(analyze_g(g, ctx));
  j["p"] = ctx.p();
  j["K"] = ctx.K();
  j["g"] = jio::to_json(g);
  return emit(std::move(j), cfg);
}

CommandResult cmd_enumerate(const RunConfig& cfg) {
  const auto ctx = context(cfg);
  const auto result = oracle::enumerate_automorphisms(ctx.p(), ctx.K(), parse_ops(cfg.ops.empty() ? cfg.op : cfg.ops),
                                                      cfg.budget);
  auto j = jio::to_json(result);
  j["budget"] = cfg.budget;
  return emit(std::move(j), cfg);
}

CommandResult cmd_verify(const RunConfig& cfg) {
  const auto ctx = context(cfg);
  const auto p = ctx.p();
  const auto k = ctx.K();
  table_size(ctx);
  json claims = json::array();
  json findings = json::array();

  for (auto tag : {OpTag::Plus, OpTag::Xor, OpTag::And, OpTag::Times}) {
    const OpKind op{tag, nullptr};
    const auto name = op_name(op);
    const auto result = oracle::enumerate_automorphisms(p, k, {op}, cfg.budget);
    const auto cmp = oracle::compare_with_family(result, tag);
    json detail = {{"family_count", cmp.family_count}, {"enumerated_count", cmp.enumerated_count},
                   {"missing_count", cmp.missing_count}, {"extra_count", cmp.extra_count}};

    bool sound = true;
    for (const auto& t : oracle::family_tables(tag, p, k))
      sound = sound && is_automorphism(LipschitzFn::from_table(ctx, t), {op}, cfg.seed);
    claims.push_back(claim("family_sound_" + name, sound));

    if (tag == OpTag::Times) {
      // Completeness for the multiplicative system mod p^k is not a claim;
      // every family member must be found, and anything extra is reported
      // together with the comparison after lifting to level k + 1.
      claims.push_back(claim("family_enumerated_" + name, cmp.missing_count == 0, detail));
      json finding = detail;
      finding["finding"] = "aut_" + name + "_vs_family";
      finding["equal"] = cmp.equal;
      finding["summary"] = "enumeration equals the family";
      if (!cmp.equal) {
        const auto lifted =
            oracle::compare_with_family(oracle::lifted_automorphisms(p, k, {op}, cfg.budget), tag, p, k);
        finding["extra_examples"] = cmp.extra;
        finding["lifted_count"] = lifted.enumerated_count;
        finding["lifted_equal"] = lifted.equal;
        finding["summary"] = std::to_string(cmp.extra_count) +
                             " automorphisms mod p^k outside the family; after lifting to k+1 " +
                             (lifted.equal ? "the sets agree" : "they still differ");
      }
      findings.push_back(std::move(finding));
    } else {
      claims.push_back(claim("aut_" + name + "_equals_family", cmp.equal, detail));
      const auto predicted = oracle::predicted_count(tag, p, k);
      claims.push_back(claim("aut_" + name + "_count", result.count() == predicted,
                             {{"count", result.count()}, {"predicted", predicted}}));
    }
  }

  // The pair claim concerns automorphisms of the Z_p systems, which all
  // factor through level k + 1.  Maps that exist only mod p^k are findings.
  const auto pairs = oracle::verify_trivial_pairs(p, k, cfg.budget);
  json pj = json::array();
  json level_k = json::array();
  for (const auto& v : pairs.pairs) {
    const auto ops = op_name(v.first) + "," + op_name(v.second);
    pj.push_back({{"ops", ops}, {"count", v.count}, {"lifted_count", v.lifted_count}});
    if (!v.identity_only) level_k.push_back({{"ops", ops}, {"count", v.count}, {"witness", *v.witness}});
  }
  claims.push_back(claim("trivial_pairs", pairs.all_lift_trivial(), {{"pairs", pj}}));
  if (!level_k.empty())
    findings.push_back({{"finding", "pair_automorphisms_mod_pk"},
                        {"pairs", level_k},
                        {"summary", std::to_string(level_k.size()) +
                                        " operation pair(s) have non-identity automorphisms mod p^k that do not lift to k+1"}});

  const auto eq = criterion_equivalence(ctx, 2000, cfg.seed, std::uint64_t{1} << 15);
  claims.push_back(claim("criterion_equivalence", eq.disagreements == 0,
                         {{"functions", eq.functions},
                          {"preserving", eq.preserving},
                          {"disagreements", eq.disagreements},
                          {"exhaustive", eq.exhaustive}}));

  const bool all = std::all_of(claims.begin(), claims.end(), [](const json& c) { return c["status"] == "PASS"; });
  json j = {{"p", p}, {"k", k}, {"budget", cfg.budget}, {"claims", claims}, {"findings", findings}, {"all_pass", all},
            {"seed", cfg.seed}};
  const int code = all ? kOk : kClaimFailure;
  if (cfg.pretty) return {code, render_verify(j)};
  return emit(std::move(j), cfg, code);
}

CommandResult cmd_report(const RunConfig& cfg) {
  std::map<std::tuple<std::uint32_t, unsigned, std::string>, std::uint64_t> rows;
  auto add = [&](const json& r) {
    if (!r.is_object() || !r.contains("p") || !r.contains("k") || !r.contains("ops") || !r.contains("count"))
      throw UsageError("report input is not an enumerate result: " + r.dump().substr(0, 80));
    std::string ops;
    for (const auto& o : r.at("ops")) ops += (ops.empty() ? "" : ",") + o.get<std::string>();
    const auto key = std::make_tuple(r.at("p").get<std::uint32_t>(), r.at("k").get<unsigned>(), ops);
    const auto count = r.at("count").get<std::uint64_t>();
    auto [it, inserted] = rows.emplace(key, count);
    if (!inserted && it->second != count)
      throw UsageError("conflicting counts for p=" + std::to_string(std::get<0>(key)) +
                       " k=" + std::to_string(std::get<1>(key)) + " ops=" + ops);
  };
  for (const auto& path : cfg.inputs) {
    const auto j = json::parse(read_text(path));
    if (j.is_array()) {
      for (const auto& r : j) add(r);
    } else {
      add(j);
    }
  }
  json out = json::array();
  for (const auto& [key, count] : rows)
    out.push_back({{"p", std::get<0>(key)}, {"k", std::get<1>(key)}, {"ops", std::get<2>(key)}, {"count", count}});
  json j = {{"rows", out}};
  if (cfg.pretty) return {kOk, render_report(j)};
  return emit(std::move(j), cfg);
}

CommandResult cmd_cipher(const std::string& action, const RunConfig& cfg) {
  using namespace padic::cipher;
  if (action == "encrypt" || action == "decrypt") {
    const auto key = jio::key_from_json(primary_input(cfg.key, cfg, "key"));
    if (cfg.word.empty()) throw UsageError("--word is required");
    const auto w = jio::word_from_json(parse_arg(cfg.word));
    const auto r = action == "encrypt" ? encrypt(w, key) : decrypt(w, key);
    return emit({{"kind", kind_name(key)}, {"input", jio::to_json(w)}, {"output", jio::to_json(r)}}, cfg);
  }
  if (action == "model") {
    const auto ctx = context(cfg);
    const auto key = jio::key_from_json(primary_input(cfg.key, cfg, "key"));
    const auto f = model_fn(key, ctx);
    auto j = jio::to_json(f);
    j["measure_preserving"] = is_bijective_all(f);
    return emit(std::move(j), cfg);
  }
  if (action == "demo") {
    const auto ctx = context(cfg);
    std::mt19937_64 rng(cfg.seed);
    CipherKey key;
    if (!cfg.key.empty()) {
      key = jio::key_from_json(parse_arg(cfg.key));
    } else if (cfg.kind == "subst_stream") {
      key = random_key(KeyKind::SubstStream, ctx.p(), ctx.K(), rng);
    } else if (cfg.kind == "keystream") {
      key = random_key(KeyKind::Keystream, ctx.p(), ctx.K(), rng);
    } else if (cfg.kind == "subst") {
      key = random_key(KeyKind::Subst, ctx.p(), ctx.K(), rng);
    } else {
      throw UsageError("unknown --kind '" + cfg.kind + "'");
    }
    if (cfg.words < 1) throw UsageError("--words must be at least 1");
    std::vector<Word> data;
    for (unsigned i = 0; i < cfg.words; ++i) data.push_back(random_word(ctx.p(), ctx.K(), rng));
    Formula formula;
    if (!cfg.formula.empty()) {
      formula = jio::formula_from_json(parse_arg(cfg.formula));
    } else {
      formula = leaf(0);
      for (std::size_t i = 1; i < data.size(); ++i) formula = apply(OpKind::xor_op(), formula, leaf(i));
    }
    json dj = json::array();
    for (const auto& d : data) dj.push_back(jio::to_json(d));
    auto j = jio::to_json(homomorphic_eval(formula, data, key));
    j["key"] = jio::to_json(key);
    j["data"] = dj;
    j["formula"] = jio::to_json(formula);
    return emit(std::move(j), cfg);
  }
  throw UsageError("unknown cipher action '" + action + "' (encrypt, decrypt, model, demo)");
}

CommandResult run(const std::string& command, const RunConfig& cfg) {
  auto error = [&](int code, const std::string& kind, const std::string& message, json extra = json::object()) {
    extra["error"] = kind;
    extra["message"] = message;
    extra["seed"] = cfg.seed;
    return CommandResult{code, extra.dump() + "\n"};
  };
  try {
    if (command == "eval") return cmd_eval(cfg);
    if (command == "vdp") return cmd_vdp(cfg);
    if (command == "check") return cmd_check(cfg);
    if (command == "make-aut") return cmd_make_aut(cfg);
    if (command == "check-hom") return cmd_check_hom(cfg);
    if (command == "analyze-g") return cmd_analyze_g(cfg);
    if (command == "enumerate") return cmd_enumerate(cfg);
    if (command == "verify") return cmd_verify(cfg);
    if (command == "report") return cmd_report(cfg);
    if (command.rfind("cipher ", 0) == 0) return cmd_cipher(command.substr(7), cfg);
    throw UsageError("unknown command '" + command + "'");
  } catch (const oracle::BudgetExceeded& e) {
    return error(kBudget, "budget_exceeded", e.what(), {{"budget", e.budget}, {"nodes", e.nodes}});
  } catch (const padic::Error& e) {
    return error(kValidation, "validation", e.what());
  } catch (const UsageError& e) {
    return error(kValidation, "usage", e.what());
  } catch (const json::exception& e) {
    return error(kValidation, "json", e.what());
  } catch (const std::invalid_argument& e) {
    return error(kValidation, "validation", e.what());
  } catch (const std::out_of_range& e) {
    return error(kValidation, "validation", e.what());
  } catch (const std::logic_error& e) {
    return error(kClaimFailure, "internal_check", e.what());
  }
}

}  // namespace padiclab
