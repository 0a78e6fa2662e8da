#pragma once

#include <nlohmann/json.hpp>

#include "wop/constructions.hpp"
#include "wop/mso.hpp"
#include "wop/wopa.hpp"

namespace wop {

using Json = nlohmann::ordered_json;

// OPM file: {"symbols": [...], "matrix": [{"a","b","rel"}]} with rel one of
// "<·", "=·", "·>". Delimiter rows and columns must not appear.
OpAlphabet alphabet_from_json(const Json& j);
Json alphabet_to_json(const OpAlphabet& alpha);

// Automaton file: {"states", "initial", "final", "push"/"shift":
// [{"from","sym","to"}], "pop": [{"from","stack","to"}]}.
Opa opa_from_json(const Json& j);
Json opa_to_json(const Opa& a);

// Weighted automaton file: the opa fields plus "semiring" and "weights":
// {"push": [{"from","sym","to","w"}], "shift": [...], "pop":
// [{"from","stack","to","w"}]} with weight literals of the semiring.
WeightedOpa wopa_from_json(const Json& j);
Json wopa_to_json(const WeightedOpa& a);

// Nested word automaton file: {"semiring", "partition":
// {"call","int","ret"}, "states", "initial", "final", "call"/"int":
// [{"from","sym","to","w"}], "ret": [{"from","stack","sym","to","w"}]}.
WeightedNwa nwa_from_json(const Json& j);
Json nwa_to_json(const WeightedNwa& n);

// Step function file: {"semiring", "parts": [{"automaton": <opa>, "weight"}]}.
StepFunction step_from_json(const Json& j);
Json step_to_json(const StepFunction& s, const Semiring& sr);

// Formula file: {"semiring", "formula": <node>} where a node is an object
// tagged by "op". Core tags: lab, le, chain, in, not, or, exists1, exists2,
// const, oplus, otimes, sum1, sum2, prod1. Sugar tags (and, imp, iff,
// forall1, eq, lt, gt, ne, succ, min, max, ite, true, false) expand at load
// time.
struct FormulaFile {
  Semiring semiring;
  Formula::Ptr formula;
};
FormulaFile formula_from_json(const Json& j);
Json formula_to_json(const Formula::Ptr& f, const Semiring& sr);

// Nivat bundle: {"alphabet": <opm>, "map": {"sym'": "sym"}, "b": <wopa>,
// "lang": <opa>}.
NivatDecomposition nivat_from_json(const Json& j);
Json nivat_to_json(const NivatDecomposition& d);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace wop
