#include "padic/json_io.hpp"

namespace padic::json_io {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw RangeError(std::string("missing JSON field '") + key + "'");
  return j.at(key);
}

std::vector<Digit> digits_of(const json& j) {
  if (!j.is_array()) throw RangeError("expected an array of digits");
  std::vector<Digit> out;
  for (const auto& v : j) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
      throw RangeError("expected a non-negative integer, got " + v.dump());
    out.push_back(v.get<Digit>());
  }
  return out;
}

json table_json(const Table& t) { return json(t); }

}  // namespace

json to_json(const PadicInt& x) {
  return {{"p", x.ctx().p()}, {"K", x.ctx().K()}, {"digits", x.digits()}};
}

PadicInt padic_from_json(const json& j) {
  const PrimeContext ctx(field(j, "p").get<std::uint32_t>(), field(j, "K").get<unsigned>());
  return PadicInt::from_digits(ctx, digits_of(field(j, "digits")));
}

PadicInt residue_from_json(const json& j, const PrimeContext& ctx) {
  if (j.is_string()) return PadicInt::from_decimal(ctx, j.get<std::string>());
  if (j.is_number_integer()) {
    const auto v = j.get<long long>();
    if (v < 0) throw RangeError("negative residue " + j.dump());
    return PadicInt::from_decimal(ctx, std::to_string(v));
  }
  if (j.is_object()) {
    auto x = padic_from_json(j);
    require_same(x.ctx(), ctx);
    return x;
  }
  throw RangeError("cannot read a residue from " + j.dump());
}

json to_json(const LipschitzFn& f) {
  json j = {{"p", f.ctx().p()}, {"K", f.ctx().K()}, {"table", table_json(f.table())}};
  if (!f.provenance().empty()) j["provenance"] = f.provenance();
  return j;
}

LipschitzFn function_from_json(const json& j) {
  const PrimeContext ctx(field(j, "p").get<std::uint32_t>(), field(j, "K").get<unsigned>());
  return LipschitzFn::from_table(ctx, field(j, "table").get<Table>(),
                                 j.value("provenance", std::string{}));
}

json to_json(const VdpSeries& s) {
  return {{"p", s.ctx.p()}, {"K", s.ctx.K()}, {"B", table_json(s.B)}, {"b", table_json(s.b)}};
}

VdpSeries series_from_json(const json& j, const PrimeContext& ctx) {
  return vdp_from_coefficients(ctx, field(j, "B").get<Table>());
}

json to_json(const AutSpec& spec) {
  return std::visit(overloaded{
                        [](const AddSpec& s) -> json { return {{"family", "add"}, {"A", s.A.to_string()}}; },
                        [](const MulSpec& s) -> json {
                          return {{"family", "mul"}, {"s", s.s}, {"a", s.a.to_string()}, {"A", s.A.to_string()}};
                        },
                        [](const XorSpec& s) -> json { return {{"family", "xor"}, {"alpha", s.alpha}}; },
                        [](const AndSpec& s) -> json { return {{"family", "and"}, {"s", s.s_list}}; },
                    },
                    spec);
}

AutSpec spec_from_json(const json& j, const PrimeContext& ctx) {
  const auto family = field(j, "family").get<std::string>();
  AutSpec spec = [&]() -> AutSpec {
    if (family == "add") return AddSpec{residue_from_json(field(j, "A"), ctx)};
    if (family == "mul")
      return MulSpec{field(j, "s").get<unsigned>(), residue_from_json(field(j, "a"), ctx),
                     residue_from_json(field(j, "A"), ctx)};
    if (family == "xor") {
      std::vector<std::vector<Digit>> alpha;
      for (const auto& row : field(j, "alpha")) alpha.push_back(digits_of(row));
      return XorSpec{std::move(alpha)};
    }
    if (family == "and") return AndSpec{field(j, "s").get<std::vector<unsigned>>()};
    throw RangeError("unknown family '" + family + "'");
  }();
  validate(spec, ctx);
  return spec;
}

json to_json(const GSpec& g) {
  json terms = json::array();
  for (const auto& t : g.terms) terms.push_back({t.i, t.j, t.coeff.to_string()});
  return {{"c", g.c.to_string()}, {"a", g.a.to_string()}, {"b", g.b.to_string()}, {"terms", terms}};
}

GSpec gspec_from_json(const json& j, const PrimeContext& ctx) {
  auto get = [&](const char* key) {
    return j.contains(key) ? residue_from_json(j.at(key), ctx) : PadicInt::zero(ctx);
  };
  GSpec g{get("c"), get("a"), get("b"), {}};
  if (j.contains("terms")) {
    for (const auto& t : j.at("terms")) {
      if (!t.is_array() || t.size() != 3) throw RangeError("G term must be [i, j, c_ij]");
      g.terms.push_back({t[0].get<unsigned>(), t[1].get<unsigned>(), residue_from_json(t[2], ctx)});
    }
  }
  return g;
}

json to_json(const CriterionReport& r) {
  json j = {{"holds", r.holds}};
  if (r.k) j["k"] = *r.k;
  if (r.m) j["m"] = *r.m;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

json to_json(const HomReport& r) {
  json j = {{"holds", r.holds}, {"exhaustive", r.exhaustive}, {"pairs_checked", r.pairs_checked}};
  if (r.counterexample) j["counterexample"] = {r.counterexample->first, r.counterexample->second};
  return j;
}

json to_json(const GReport& r) {
  json w = json::array();
  for (const auto& a : r.witnesses) w.push_back(a.to_string());
  json j = {{"degrees", r.degrees},       {"trivial", r.trivial},
            {"group_order", r.group_order}, {"witnesses", w},
            {"lifts_uniquely", r.lifts_uniquely}, {"consistent", r.consistent}};
  j["d"] = r.d ? json(*r.d) : json(nullptr);
  j["zp_order"] = r.zp_order ? json(*r.zp_order) : json("infinite");
  return j;
}

json to_json(const cipher::Word& w) { return {{"p", w.p()}, {"symbols", w.symbols()}}; }

cipher::Word word_from_json(const json& j) {
  return cipher::Word(field(j, "p").get<std::uint32_t>(), digits_of(field(j, "symbols")));
}

json to_json(const cipher::CipherKey& key) {
  return std::visit(overloaded{
                        [](const cipher::SubstStreamKey& k) -> json {
                          return {{"kind", "subst_stream"}, {"perms", k.perms}};
                        },
                        [](const cipher::KeystreamKey& k) -> json {
                          return {{"kind", "keystream"}, {"gamma", k.gamma}};
                        },
                        [](const cipher::SubstKey& k) -> json { return {{"kind", "subst"}, {"perm", k.perm}}; },
                    },
                    key);
}

cipher::CipherKey key_from_json(const json& j) {
  const auto kind = field(j, "kind").get<std::string>();
  if (kind == "subst_stream") {
    cipher::SubstStreamKey k;
    for (const auto& g : field(j, "perms")) k.perms.push_back(digits_of(g));
    return k;
  }
  if (kind == "keystream") return cipher::KeystreamKey{digits_of(field(j, "gamma"))};
  if (kind == "subst") return cipher::SubstKey{digits_of(field(j, "perm"))};
  throw RangeError("unknown cipher kind '" + kind + "'");
}

json to_json(const cipher::Formula& f) {
  return std::visit(overloaded{
                        [](const cipher::FormulaNode::Leaf& l) -> json { return {"leaf", l.index}; },
                        [](const cipher::FormulaNode::Apply& a) -> json {
                          return {op_name(a.op), to_json(a.left), to_json(a.right)};
                        },
                    },
                    f->node);
}

cipher::Formula formula_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_string())
    throw RangeError("formula must be [\"op\", lhs, rhs] or [\"leaf\", i]");
  const auto head = j[0].get<std::string>();
  if (head == "leaf") {
    if (j.size() != 2) throw RangeError("leaf must be [\"leaf\", i]");
    return cipher::leaf(j[1].get<std::size_t>());
  }
  if (j.size() != 3) throw RangeError("operation node needs two operands");
  return cipher::apply(parse_op(head), formula_from_json(j[1]), formula_from_json(j[2]));
}

json to_json(const cipher::DemoRecord& r) {
  json j = {{"plain_result", to_json(r.plain_result)},
            {"encrypted_result", to_json(r.encrypted_result)},
            {"computed_on_cipher", to_json(r.computed_on_cipher)},
            {"equal", r.equal}};
  j["first_difference"] = r.first_difference ? json(*r.first_difference) : json(nullptr);
  return j;
}

json to_json(const oracle::EnumerationResult& r) {
  json ops = json::array();
  for (const auto& op : r.ops) ops.push_back(op_name(op));
  return {{"p", r.p},         {"k", r.k},
          {"ops", ops},       {"count", r.count()},
          {"nodes", r.nodes}, {"automorphisms", r.automorphisms}};
}

json to_json(const oracle::SetComparison& c) {
  return {{"equal", c.equal},
          {"family_count", c.family_count},
          {"enumerated_count", c.enumerated_count},
          {"missing_count", c.missing_count},
          {"extra_count", c.extra_count},
          {"missing", c.missing},
          {"extra", c.extra}};
}

json to_json(const oracle::TrivialPairsReport& r) {
  json pairs = json::array();
  for (const auto& v : r.pairs) {
    json e = {{"ops", {op_name(v.first), op_name(v.second)}},
              {"count", v.count},
              {"nodes", v.nodes},
              {"identity_only", v.identity_only},
              {"lifted_count", v.lifted_count},
              {"lifted_identity_only", v.lifted_identity_only}};
    if (v.witness) e["witness"] = *v.witness;
    pairs.push_back(std::move(e));
  }
  return {{"p", r.p}, {"k", r.k}, {"pairs", pairs}, {"all_trivial", r.all_trivial()},
          {"all_lift_trivial", r.all_lift_trivial()}};
}

}  // namespace padic::json_io
