#include "wop/mso.hpp"

#include <doctest.h>

#include <random>

#include "support.hpp"
#include "wop/fixtures.hpp"

using namespace wop;
namespace fx = wop::fixtures;
using Fm = Formula;

namespace {

Weight rat(const char* lit) { return Semiring::rational().parse_weight(lit); }

}  // namespace

TEST_CASE("boolean satisfaction") {
  OpAlphabet expr = fx::expr_opm();
  Word w = parse_word("n + n");

  Assignment s2;
  s2.first["x"] = 2;
  CHECK(bool_eval(expr, Fm::lab("+", "x"), w, s2));
  CHECK_FALSE(bool_eval(expr, Fm::lab("n", "x"), w, s2));

  Assignment s02;
  s02.first["x"] = 0;
  s02.first["y"] = 2;
  CHECK(bool_eval(expr, Fm::chain("x", "y"), w, s02));
  CHECK(bool_eval(expr, Fm::lab("#", "x"), w, s02));

  // min holds exactly at the leading delimiter.
  for (int i = 0; i <= 4; ++i) {
    Assignment s;
    s.first["x"] = i;
    CHECK(bool_eval(expr, Fm::min("x"), w, s) == (i == 0));
    CHECK(bool_eval(expr, Fm::max("x"), w, s) == (i == 4));
  }

  Assignment in_set;
  in_set.first["x"] = 1;
  in_set.second["X"] = {1, 3};
  CHECK(bool_eval(expr, Fm::in("x", "X"), w, in_set));

  CHECK_THROWS_AS(bool_eval(expr, Fm::lab("n", "unbound"), w, Assignment{}),
                  PreconditionError);
}

TEST_CASE("quantifier sugar") {
  OpAlphabet expr = fx::expr_opm();
  Word w = parse_word("n + n");
  Assignment empty;
  // Some position carries + strictly between two n-positions.
  auto between = Fm::exists1(
      "x", Fm::big_and({Fm::lab("+", "x"),
                        Fm::exists1("y", Fm::and_(Fm::lab("n", "y"), Fm::lt("y", "x"))),
                        Fm::exists1("z", Fm::and_(Fm::lab("n", "z"), Fm::gt("z", "x")))}));
  CHECK(bool_eval(expr, between, w, empty));
  CHECK(bool_eval(expr, Fm::true_(), w, empty));
  CHECK_FALSE(bool_eval(expr, Fm::false_(), w, empty));

  // succ pins adjacent positions only.
  Assignment two;
  two.first["x"] = 1;
  two.first["y"] = 2;
  CHECK(bool_eval(expr, Fm::succ("x", "y"), w, two));
  two.first["y"] = 3;
  CHECK_FALSE(bool_eval(expr, Fm::succ("x", "y"), w, two));
}

TEST_CASE("weighted clauses") {
  OpAlphabet pen = fx::penalty_opm();
  Semiring q = Semiring::rational();
  Assignment empty;

  for (const Word& w : compatible_words(pen, 3)) {
    CHECK(mso_eval(pen, q, Fm::constant(rat("7/3")), w, empty) == rat("7/3"));
  }
  CHECK(mso_eval(pen, q, Fm::sum1("x", Fm::constant(rat("1"))),
                 parse_word("call ret"), empty) == rat("2"));
  CHECK(mso_eval(pen, q, Fm::prod1("x", Fm::constant(rat("2"))),
                 parse_word("call call ret"), empty) == rat("8"));

  // sum over set variables counts subsets.
  CHECK(mso_eval(pen, q, Fm::sum2("X", Fm::constant(rat("1"))),
                 parse_word("call ret"), empty) == rat("4"));
}

TEST_CASE("oplus and otimes are the semiring operations pointwise") {
  OpAlphabet pen = fx::penalty_opm();
  Semiring q = Semiring::rational();
  Assignment empty;
  Word w = parse_word("call int");

  std::vector<Fm::Ptr> samples{
      Fm::constant(rat("1/2")),
      Fm::sum1("x", Fm::constant(rat("1"))),
      Fm::exists1("x", Fm::lab("int", "x")),
      Fm::prod1("x", Fm::constant(rat("3"))),
      Fm::false_(),
  };
  for (const auto& f : samples) {
    for (const auto& g : samples) {
      Weight fv = mso_eval(pen, q, f, w, empty);
      Weight gv = mso_eval(pen, q, g, w, empty);
      CHECK(mso_eval(pen, q, Fm::oplus(f, g), w, empty) == q.add(fv, gv));
      CHECK(mso_eval(pen, q, Fm::otimes(f, g), w, empty) == q.mul(fv, gv));
    }
  }
}

TEST_CASE("product quantifier multiplies left to right") {
  OpAlphabet sep = fx::separation_opm();
  Semiring fl = Semiring::fin_lang("ab");
  Assignment empty;
  auto f = Fm::prod1("x", Fm::ite(Fm::lab("c", "x"), fl.from_lang({"a"}),
                                  fl.from_lang({"b"})));
  CHECK(mso_eval(sep, fl, f, parse_word("c c r"), empty) == fl.from_lang({"aab"}));
  CHECK(mso_eval(sep, fl, f, parse_word("r"), empty) == fl.from_lang({"b"}));
}

TEST_CASE("classification of fragments") {
  Semiring mp = Semiring::max_plus();
  Classification chi = classify(fx::policy_chi(), mp);
  CHECK(chi.is_restricted);
  CHECK(chi.is_otimes_restricted);
  CHECK(chi.is_prod_restricted);
  CHECK_FALSE(chi.is_boolean);
  CHECK_FALSE(chi.is_almost_boolean);

  Semiring q = Semiring::rational();
  auto nested_prod = Fm::prod1("x", Fm::prod1("y", Fm::constant(rat("2"))));
  CHECK_FALSE(classify(nested_prod, q).is_prod_restricted);

  auto boolean = Fm::exists1("x", Fm::lab("call", "x"));
  Classification bc = classify(boolean, q);
  CHECK(bc.is_boolean);
  CHECK(bc.is_almost_boolean);
  CHECK(bc.is_restricted);
  CHECK(bc.constants.empty());

  // Non-commuting constants on both sides of an otimes.
  Semiring fl = Semiring::fin_lang("ab");
  auto bad = Fm::otimes(
      Fm::prod1("x", Fm::constant(fl.from_lang({"a"}))),
      Fm::constant(fl.from_lang({"b"})));
  CHECK_FALSE(classify(bad, fl).is_otimes_restricted);
  auto good = Fm::otimes(Fm::constant(fl.from_lang({"a"})),
                         Fm::constant(fl.from_lang({"b"})));
  CHECK(classify(good, fl).is_otimes_restricted);  // left side almost boolean
}

TEST_CASE("consistency under assignment extension") {
  OpAlphabet pen = fx::penalty_opm();
  Semiring q = Semiring::rational();
  Word w = parse_word("call int");

  Assignment extended;
  extended.first["x"] = 1;
  extended.second["Y"] = {2};
  CHECK(consistency_check(pen, q, Fm::constant(rat("5")), w, extended));
  CHECK(consistency_check(pen, q, Fm::lab("call", "x"), w, extended));

  std::mt19937 rng(11);
  std::vector<Fm::Ptr> fixtures{
      Fm::sum1("x", Fm::ite(Fm::lab("call", "x"), rat("2"), rat("1"))),
      Fm::exists1("x", Fm::in("x", "Z")),
      Fm::prod1("x", Fm::constant(rat("1/2"))),
  };
  for (const auto& f : fixtures) {
    for (int trial = 0; trial < 50; ++trial) {
      Assignment sigma;
      sigma.second["Z"] = {};  // free in the second fixture
      for (const char* var : {"x", "y", "z"}) {
        if (rng() % 2) sigma.first[var] = 1 + static_cast<int>(rng() % 2);
      }
      for (const char* var : {"X", "Y", "Z"}) {
        if (rng() % 2) {
          std::set<int> s;
          if (rng() % 2) s.insert(1);
          if (rng() % 2) s.insert(2);
          sigma.second[var] = s;
        }
      }
      CHECK(consistency_check(pen, q, f, w, sigma));
    }
  }
}

TEST_CASE("assignment space guard") {
  OpAlphabet pen = fx::penalty_opm();
  Semiring q = Semiring::rational();
  auto f = Fm::sum2("A", Fm::sum2("B", Fm::sum2("C", Fm::constant(rat("1")))));
  Word w = parse_word("call call call call call");
  EvalOptions tight;
  tight.budget_log2 = 10;
  CHECK_THROWS_AS(mso_eval(pen, q, f, w, Assignment{}, tight), PreconditionError);
  CHECK(mso_eval(pen, q, f, w, Assignment{}) == q.parse_weight("32768"));  // (2^5)^3
}

TEST_CASE("automaton to formula on the one-state fixture") {
  OpAlphabet single = fx::single_push_opm();
  WeightedOpa a = fx::single_push();
  Fm::Ptr phi = automaton_to_formula(single, a);

  // One second-order sum per transition.
  int sums = 0;
  Fm::Ptr cursor = phi;
  while (cursor->op() == Fm::Op::kSum2) {
    ++sums;
    cursor = cursor->left();
  }
  CHECK(sums == 2);
  CHECK(classify(phi, a.semiring()).is_restricted);
  CHECK(free_vars(phi).first.empty());
  CHECK(free_vars(phi).second.empty());

  Assignment empty;
  CHECK(mso_eval(single, a.semiring(), phi, parse_word("a a"), empty) == rat("1/4"));
  CHECK(mso_eval(single, a.semiring(), phi, parse_word("a"), empty) == rat("1/2"));
}

TEST_CASE("automaton to formula with no final states is zero") {
  OpAlphabet single = fx::single_push_opm();
  Semiring q = Semiring::rational();
  WeightedOpa a(Opa{}, q);
  a.base().add_state("q");
  a.base().add_initial("q");
  a.add_push("q", "a", "q", rat("1/2"));
  a.add_pop("q", "q", "q", rat("1"));
  Fm::Ptr phi = automaton_to_formula(single, a);
  Assignment empty;
  CHECK(mso_eval(single, q, phi, parse_word("a"), empty) == q.zero());
  CHECK(mso_eval(single, q, phi, parse_word("a a"), empty) == q.zero());
}

TEST_CASE("automaton to formula matches the penalty behavior on short words") {
  OpAlphabet pen = fx::penalty_opm();
  WeightedOpa a = fx::penalty();
  Fm::Ptr phi = automaton_to_formula(pen, a);
  CHECK(classify(phi, a.semiring()).is_restricted);
  Assignment empty;
  for (const Word& w : compatible_words(pen, 2)) {
    CHECK(mso_eval(pen, a.semiring(), phi, w, empty) == behavior(pen, a, w));
  }
}

TEST_CASE("translation preconditions") {
  // Non-commutative and not restricted: rejected.
  CHECK_THROWS_AS(automaton_to_formula(fx::separation_opm(), fx::separation()),
                  PreconditionError);
  // Non-commutative but restricted: fine.
  Semiring fl = Semiring::fin_lang("ab");
  OpAlphabet sep = fx::separation_opm();
  WeightedOpa restricted(Opa{}, fl);
  restricted.base().add_state("q");
  restricted.base().add_initial("q");
  restricted.base().add_final("q");
  restricted.add_push("q", "c", "q", fl.from_lang({"a"}));
  restricted.add_shift("q", "r", "q", fl.from_lang({"b"}));
  restricted.add_pop("q", "q", "q", fl.one());
  Fm::Ptr phi = automaton_to_formula(sep, restricted);
  Assignment empty;
  CHECK(mso_eval(sep, fl, phi, parse_word("c r"), empty) ==
        behavior(sep, restricted, parse_word("c r")));
}
