#include "wop/io.hpp"

#include <doctest.h>

#include "wop/fixtures.hpp"

using namespace wop;
namespace fx = wop::fixtures;

namespace {

const std::string kFixtureDir = WOP_FIXTURE_DIR;

}  // namespace

TEST_CASE("alphabet files round trip") {
  OpAlphabet expr = fx::expr_opm();
  OpAlphabet back = alphabet_from_json(alphabet_to_json(expr));
  CHECK(back.symbols() == expr.symbols());
  CHECK(back.entries() == expr.entries());

  Json bad = alphabet_to_json(expr);
  bad["matrix"].push_back(Json{{"a", "#"}, {"b", "n"}, {"rel", "<·"}});
  CHECK_THROWS_AS(alphabet_from_json(bad), ParseError);
}

TEST_CASE("automaton files round trip") {
  Opa a = fx::expr_opa();
  Opa back = opa_from_json(opa_to_json(a));
  CHECK(back.states() == a.states());
  CHECK(back.initial() == a.initial());
  CHECK(back.final() == a.final());
  CHECK(back.push() == a.push());
  CHECK(back.shift() == a.shift());
  CHECK(back.pop() == a.pop());
}

TEST_CASE("weighted automaton files round trip") {
  for (const WeightedOpa& a :
       {fx::penalty(), fx::policy(), fx::separation(), fx::log_automaton()}) {
    WeightedOpa back = wopa_from_json(wopa_to_json(a));
    CHECK(back.semiring().id() == a.semiring().id());
    CHECK(back.base().push() == a.base().push());
    CHECK(back.push_weights() == a.push_weights());
    CHECK(back.shift_weights() == a.shift_weights());
    CHECK(back.pop_weights() == a.pop_weights());
  }
}

TEST_CASE("nested word automaton files round trip") {
  WeightedNwa n = fx::example_nwa();
  WeightedNwa back = nwa_from_json(nwa_to_json(n));
  CHECK(back.calls() == n.calls());
  CHECK(back.internals() == n.internals());
  CHECK(back.returns() == n.returns());
  CHECK(back.partition().call == n.partition().call);
}

TEST_CASE("step function files round trip") {
  Semiring q = Semiring::rational();
  OpAlphabet pen = fx::penalty_opm();
  StepFunction s(q, {{fx::first_symbol_opa(pen, "call"), q.parse_weight("1/2")},
                     {fx::first_symbol_opa(pen, "ret"), q.parse_weight("3")}});
  StepFunction back = step_from_json(step_to_json(s, q));
  CHECK(back.parts().size() == 2);
  CHECK(back.parts()[0].weight == s.parts()[0].weight);
  CHECK(back.parts()[1].automaton.push() == s.parts()[1].automaton.push());
}

TEST_CASE("formula files round trip through core nodes") {
  Semiring mp = Semiring::max_plus();
  Formula::Ptr chi = fx::policy_chi();
  Json j = formula_to_json(chi, mp);
  FormulaFile back = formula_from_json(j);
  CHECK(back.semiring.id() == mp.id());
  // Serialization is sugar-free, so a second round trip is the identity.
  CHECK(formula_to_json(back.formula, mp) == j);

  OpAlphabet pol = fx::policy_opm();
  Word w = parse_word("$ call $");
  Assignment empty;
  CHECK(mso_eval(pol, mp, back.formula, w, empty) ==
        mso_eval(pol, mp, chi, w, empty));
}

TEST_CASE("formula sugar tags expand on load") {
  Json j;
  j["semiring"] = "rational";
  j["formula"] = Json{{"op", "sum1"},
                      {"x", "x"},
                      {"f", Json{{"op", "ite"},
                                 {"c", Json{{"op", "lab"}, {"a", "call"}, {"x", "x"}}},
                                 {"then", "2"},
                                 {"else", "1"}}}};
  FormulaFile f = formula_from_json(j);
  OpAlphabet pen = fx::penalty_opm();
  CHECK(mso_eval(pen, f.semiring, f.formula, parse_word("call int"), Assignment{}) ==
        f.semiring.parse_weight("3"));

  Json bad = j;
  bad["formula"]["op"] = "xor";
  CHECK_THROWS_AS(formula_from_json(bad), ParseError);
}

TEST_CASE("nivat bundles round trip") {
  OpAlphabet pen = fx::penalty_opm();
  NivatDecomposition d = nivat_decompose(pen, fx::penalty());
  NivatDecomposition back = nivat_from_json(nivat_to_json(d));
  CHECK(back.h == d.h);
  CHECK(back.extended.symbols() == d.extended.symbols());
  CHECK(nivat_eval(back, parse_word("call int")) ==
        nivat_eval(d, parse_word("call int")));
}

TEST_CASE("shipped fixture files match the built-in fixtures") {
  auto load = [&](const std::string& name) {
    return load_json_file(kFixtureDir + "/" + name);
  };
  CHECK(load("expr.opm.json") == alphabet_to_json(fx::expr_opm()));
  CHECK(load("expr.opa.json") == opa_to_json(fx::expr_opa()));
  CHECK(load("penalty.opm.json") == alphabet_to_json(fx::penalty_opm()));
  CHECK(load("penalty.wopa.json") == wopa_to_json(fx::penalty()));
  CHECK(load("policy.opm.json") == alphabet_to_json(fx::policy_opm()));
  CHECK(load("policy.wopa.json") == wopa_to_json(fx::policy()));
  CHECK(load("log.wopa.json") == wopa_to_json(fx::log_automaton()));
  CHECK(load("separation.opm.json") == alphabet_to_json(fx::separation_opm()));
  CHECK(load("separation.wopa.json") == wopa_to_json(fx::separation()));
  CHECK(load("single_push.opm.json") == alphabet_to_json(fx::single_push_opm()));
  CHECK(load("single_push.wopa.json") == wopa_to_json(fx::single_push()));
  CHECK(load("vpl.opm.json") == alphabet_to_json(vpl_opm(fx::car_partition())));
  CHECK(load("example.nwa.json") == nwa_to_json(fx::example_nwa()));
  CHECK(load("policy_chi.mso.json") ==
        formula_to_json(fx::policy_chi(), Semiring::max_plus()));
}
