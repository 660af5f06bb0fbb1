#pragma once

#include <json.hpp>

#include "padic/automorph.hpp"
#include "padic/cipher.hpp"
#include "padic/lipschitz.hpp"
#include "padic/oracle.hpp"

// JSON encodings.  Residues are written as decimal strings; on input a
// residue may be a JSON integer, a decimal string, or a full
// {"p", "K", "digits"} object.
namespace padic::json_io {

using nlohmann::json;

json to_json(const PadicInt& x);
PadicInt padic_from_json(const json& j);
PadicInt residue_from_json(const json& j, const PrimeContext& ctx);

json to_json(const LipschitzFn& f);
LipschitzFn function_from_json(const json& j);

json to_json(const VdpSeries& s);
VdpSeries series_from_json(const json& j, const PrimeContext& ctx);

json to_json(const AutSpec& spec);
AutSpec spec_from_json(const json& j, const PrimeContext& ctx);

json to_json(const GSpec& g);
GSpec gspec_from_json(const json& j, const PrimeContext& ctx);

json to_json(const CriterionReport& r);
json to_json(const HomReport& r);
json to_json(const GReport& r);

json to_json(const cipher::Word& w);
cipher::Word word_from_json(const json& j);
json to_json(const cipher::CipherKey& key);
cipher::CipherKey key_from_json(const json& j);
json to_json(const cipher::Formula& f);
cipher::Formula formula_from_json(const json& j);
json to_json(const cipher::DemoRecord& r);

json to_json(const oracle::EnumerationResult& r);
json to_json(const oracle::SetComparison& c);
json to_json(const oracle::TrivialPairsReport& r);

}  // namespace padic::json_io
