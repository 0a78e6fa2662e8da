#include "wop/constructions.hpp"

#include <doctest.h>

#include "support.hpp"
#include "wop/fixtures.hpp"

using namespace wop;
namespace fx = wop::fixtures;

namespace {

Weight rat(const char* lit) { return Semiring::rational().parse_weight(lit); }

WeightedOpa empty_wopa(const Semiring& sr) { return WeightedOpa(Opa{}, sr); }

}  // namespace

TEST_CASE("sum is pointwise addition") {
  OpAlphabet pen = fx::penalty_opm();
  WeightedOpa a = fx::penalty();
  WeightedOpa doubled = sum(a, a);
  CHECK(behavior(pen, doubled, parse_word("call int")) == rat("1"));
  CHECK(is_restricted(doubled));

  WeightedOpa with_empty = sum(a, empty_wopa(a.semiring()));
  for (const Word& w : compatible_words(pen, 4)) {
    CHECK(behavior(pen, with_empty, w) == behavior(pen, a, w));
    CHECK(behavior(pen, doubled, w) ==
          a.semiring().add(behavior(pen, a, w), behavior(pen, a, w)));
  }
}

TEST_CASE("intersection with an OPL gates the behavior") {
  OpAlphabet pen = fx::penalty_opm();
  WeightedOpa a = fx::penalty();

  WeightedOpa unchanged = intersect_with_opl(a, universal_opa(pen));
  for (const Word& w : compatible_words(pen, 4)) {
    CHECK(behavior(pen, unchanged, w) == behavior(pen, a, w));
  }
  CHECK(is_restricted(unchanged));

  // Universal skeleton that rejects words containing int.
  Opa no_int;
  no_int.add_state("u");
  no_int.add_initial("u");
  no_int.add_final("u");
  for (const std::string& s : pen.symbols()) {
    if (s == "int") continue;
    no_int.add_push("u", s, "u");
    no_int.add_shift("u", s, "u");
  }
  no_int.add_pop("u", "u", "u");
  WeightedOpa gated = intersect_with_opl(a, no_int);
  CHECK(behavior(pen, gated, parse_word("call int")) == rat("0"));
  for (const Word& w : compatible_words(pen, 4)) {
    bool has_int = false;
    for (const auto& t : w.tokens) has_int |= (t == "int");
    Weight expected = has_int ? a.semiring().zero() : behavior(pen, a, w);
    CHECK(behavior(pen, gated, w) == expected);
  }

  CHECK_THROWS_AS(intersect_with_opl(a, fx::policy().base()), PreconditionError);
}

TEST_CASE("Hadamard product multiplies behaviors pointwise") {
  OpAlphabet pen = fx::penalty_opm();
  WeightedOpa a = fx::penalty();
  WeightedOpa squared = hadamard(a, a);
  CHECK(behavior(pen, squared, parse_word("call int")) == rat("1/4"));

  WeightedOpa with_one = hadamard(a, lift_boolean(universal_opa(pen), a.semiring()));
  for (const Word& w : compatible_words(pen, 4)) {
    CHECK(behavior(pen, squared, w) ==
          a.semiring().mul(behavior(pen, a, w), behavior(pen, a, w)));
    CHECK(behavior(pen, with_one, w) == behavior(pen, a, w));
  }

  CHECK_THROWS_AS(hadamard(fx::separation(), fx::separation()), PreconditionError);
}

TEST_CASE("projection sums over preimages") {
  OpAlphabet pen = fx::penalty_opm();
  WeightedOpa a = fx::penalty();

  SymbolMap identity;
  for (const auto& s : pen.symbols()) identity[s] = s;
  WeightedOpa same = project(pen, a, identity, pen);
  for (const Word& w : compatible_words(pen, 4)) {
    CHECK(behavior(pen, same, w) == behavior(pen, a, w));
  }
  CHECK(is_restricted(same));

  // Two call flavors collapsing back to call.
  SymbolMap h{{"c1", "call"}, {"c2", "call"}, {"ret", "ret"}, {"int", "int"}};
  std::vector<std::string> split_symbols{"c1", "c2", "ret", "int"};
  OpAlphabet split = pullback_opm(h, pen, split_symbols);
  Semiring q = Semiring::rational();
  WeightedOpa two_calls(Opa{}, q);
  two_calls.base().add_state("q0");
  two_calls.base().add_initial("q0");
  two_calls.base().add_final("q0");
  two_calls.add_push("q0", "c1", "q0", rat("1/2"));
  two_calls.add_push("q0", "c2", "q0", rat("1/3"));
  two_calls.add_push("q0", "int", "q0", rat("1"));
  two_calls.add_shift("q0", "ret", "q0", rat("2"));
  two_calls.add_pop("q0", "q0", "q0", rat("1"));

  WeightedOpa projected = project(split, two_calls, h, pen);
  CHECK(behavior(pen, projected, parse_word("call")) ==
        q.add(behavior(split, two_calls, parse_word("c1")),
              behavior(split, two_calls, parse_word("c2"))));
  for (const Word& v : compatible_words(pen, 4)) {
    CHECK(behavior(pen, projected, v) ==
          testing::preimage_sum(split, two_calls, h, v));
  }

  SymbolMap bad{{"call", "ret"}, {"ret", "ret"}, {"int", "int"}};
  CHECK_THROWS_AS(project(pen, a, bad, pen), PreconditionError);
}

TEST_CASE("projected pops preserve the remembered symbol") {
  OpAlphabet pen = fx::penalty_opm();
  SymbolMap identity;
  for (const auto& s : pen.symbols()) identity[s] = s;
  WeightedOpa projected = project(pen, fx::penalty(), identity, pen);
  for (const auto& [t, w] : projected.pop_weights()) {
    const std::string& from = std::get<0>(t);
    const std::string& to = std::get<2>(t);
    CHECK(from.substr(from.find('*')) == to.substr(to.find('*')));
  }
}

TEST_CASE("scalar left multiplication") {
  OpAlphabet pen = fx::penalty_opm();
  WeightedOpa a = fx::penalty();

  WeightedOpa by_one = scalar_left_multiply(a.semiring().one(), a);
  WeightedOpa by_zero = scalar_left_multiply(a.semiring().zero(), a);
  WeightedOpa by_third = scalar_left_multiply(rat("1/3"), a);
  CHECK(is_restricted(by_third));
  for (const Word& w : compatible_words(pen, 4)) {
    CHECK(behavior(pen, by_one, w) == behavior(pen, a, w));
    CHECK(behavior(pen, by_zero, w) == a.semiring().zero());
    CHECK(behavior(pen, by_third, w) ==
          a.semiring().mul(rat("1/3"), behavior(pen, a, w)));
  }

  // Left-concatenation shows the multiplication really is on the left.
  Semiring fl = Semiring::fin_lang("ab");
  WeightedOpa scaled = scalar_left_multiply(fl.from_lang({"b"}), fx::separation());
  CHECK(behavior(fx::separation_opm(), scaled, parse_word("c r")) ==
        fl.from_lang({"baba"}));
}

TEST_CASE("pop-weight elimination produces an equivalent restricted automaton") {
  OpAlphabet pen = fx::penalty_opm();
  WeightedOpa a = fx::penalty();

  WeightedOpa restricted = eliminate_pop_weights(a);
  CHECK(is_restricted(restricted));
  for (const Word& w : compatible_words(pen, 4)) {
    CHECK(behavior(pen, restricted, w) == behavior(pen, a, w));
    CHECK(enumerate_runs(pen, restricted.base(), w).size() ==
          enumerate_runs(pen, a.base(), w).size());
  }

  // The same series with the 1/2 charged on the pop instead of the push.
  Semiring q = Semiring::rational();
  WeightedOpa pop_charged(Opa{}, q);
  pop_charged.base().add_state("q0");
  pop_charged.base().add_initial("q0");
  pop_charged.base().add_final("q0");
  pop_charged.add_push("q0", "call", "q0", rat("1"));
  pop_charged.add_push("q0", "int", "q0", rat("1"));
  pop_charged.add_shift("q0", "ret", "q0", rat("2"));
  pop_charged.add_pop("q0", "q0", "q0", rat("1/2"));
  CHECK_FALSE(is_restricted(pop_charged));

  WeightedOpa fixed = eliminate_pop_weights(pop_charged);
  CHECK(is_restricted(fixed));
  for (const Word& w : compatible_words(pen, 5)) {
    CHECK(behavior(pen, fixed, w) == behavior(pen, pop_charged, w));
  }

  CHECK_THROWS_AS(eliminate_pop_weights(fx::separation()), PreconditionError);

  WeightedOpa no_states = eliminate_pop_weights(empty_wopa(q));
  CHECK(is_restricted(no_states));
  CHECK(behavior(pen, no_states, parse_word("call")) == q.zero());
}

TEST_CASE("nested word behavior") {
  Semiring q = Semiring::rational();
  WeightedNwa n = fx::example_nwa();
  CHECK(nwa_behavior(n, parse_word("a c a r")) == rat("210"));  // 2*3*5*7
  CHECK_THROWS_AS(nwa_behavior(n, parse_word("r")), PreconditionError);
  CHECK_THROWS_AS(nwa_behavior(n, parse_word("c a")), PreconditionError);

  WeightedNwa single(fx::car_partition(), q);
  single.add_state("s");
  single.add_state("t");
  single.add_initial("s");
  single.add_final("t");
  single.add_internal("s", "a", "t", rat("9"));
  CHECK(nwa_behavior(single, parse_word("a")) == rat("9"));
}

TEST_CASE("nested word order sensitivity over languages") {
  Semiring fl = Semiring::fin_lang("xyzw");
  WeightedNwa n(fx::car_partition(), fl);
  for (const char* q : {"q0", "q1", "q2", "q3", "q4"}) n.add_state(q);
  n.add_initial("q0");
  n.add_final("q4");
  n.add_internal("q0", "a", "q1", fl.from_lang({"x"}));
  n.add_call("q1", "c", "q2", fl.from_lang({"y"}));
  n.add_internal("q2", "a", "q3", fl.from_lang({"z"}));
  n.add_return("q3", "q1", "r", "q4", fl.from_lang({"w"}));
  CHECK(nwa_behavior(n, parse_word("a c a r")) == fl.from_lang({"xyzw"}));

  WeightedOpa embedded = from_nwa(n);
  CHECK(is_restricted(embedded));
  CHECK(behavior(vpl_opm(fx::car_partition()), embedded, parse_word("a c a r")) ==
        fl.from_lang({"xyzw"}));
}

TEST_CASE("embedded runs pop right after each internal push and return shift") {
  WeightedNwa n = fx::example_nwa();
  WeightedOpa b = from_nwa(n);
  OpAlphabet vpl = vpl_opm(n.partition());
  Word w = parse_word("a c a r");
  auto runs = enumerate_runs(vpl, b.base(), w);
  REQUIRE(runs.size() == 1);
  const Run& r = runs[0];
  for (std::size_t i = 0; i < r.size(); ++i) {
    bool internal_push = r[i].kind == MoveKind::kPush &&
                         n.partition().classify(r[i].label) == VpClass::kInternal;
    bool return_shift = r[i].kind == MoveKind::kShift;
    if (internal_push || return_shift) {
      REQUIRE(i + 1 < r.size());
      CHECK(r[i + 1].kind == MoveKind::kPop);
    }
  }
}

TEST_CASE("internal-only automata embed exactly") {
  Semiring q = Semiring::rational();
  WeightedNwa n(fx::car_partition(), q);
  n.add_state("s");
  n.add_state("t");
  n.add_initial("s");
  n.add_final("t");
  n.add_internal("s", "a", "t", q.parse_weight("2"));
  n.add_internal("t", "a", "t", q.parse_weight("3"));
  n.add_internal("t", "a", "s", q.parse_weight("5"));
  WeightedOpa b = from_nwa(n);
  OpAlphabet vpl = vpl_opm(fx::car_partition());
  for (const Word& w : testing::well_matched_words(fx::car_partition(), 4)) {
    CHECK(behavior(vpl, b, w) == nwa_behavior(n, w));
  }
}

TEST_CASE("embedding agrees with nested word semantics") {
  WeightedNwa n = fx::example_nwa();
  WeightedOpa b = from_nwa(n);
  CHECK(is_restricted(b));
  OpAlphabet vpl = vpl_opm(n.partition());
  for (const Word& w : testing::well_matched_words(n.partition(), 5)) {
    CHECK(behavior(vpl, b, w) == nwa_behavior(n, w));
  }

  WeightedNwa no_final(fx::car_partition(), Semiring::rational());
  no_final.add_state("s");
  no_final.add_initial("s");
  no_final.add_internal("s", "a", "s", rat("1"));
  WeightedOpa nb = from_nwa(no_final);
  CHECK(behavior(vpl, nb, parse_word("a a")) == Semiring::rational().zero());
}

TEST_CASE("Nivat decomposition round trips") {
  OpAlphabet pen = fx::penalty_opm();
  WeightedOpa a = fx::penalty();
  NivatDecomposition d = nivat_decompose(pen, a);
  CHECK(d.extended.symbols().size() == 3);  // |Q|^2 * |Sigma| = 1 * 3
  CHECK(d.b.base().states().size() == 1);
  CHECK(is_restricted(d.b));
  CHECK(is_opm_preserving(d.h, d.extended, pen));
  CHECK(nivat_eval(d, parse_word("call int")) == rat("1/2"));
  for (const Word& w : compatible_words(pen, 4)) {
    CHECK(nivat_eval(d, w) == behavior(pen, a, w));
  }

  CHECK_THROWS_AS(nivat_decompose(fx::separation_opm(), fx::separation()),
                  PreconditionError);
}

TEST_CASE("Nivat evaluation of an empty language is zero") {
  Semiring q = Semiring::rational();
  OpAlphabet pen = fx::penalty_opm();
  WeightedOpa no_final(Opa{}, q);
  no_final.base().add_state("q0");
  no_final.base().add_initial("q0");
  no_final.add_push("q0", "call", "q0", q.parse_weight("1/2"));
  no_final.add_pop("q0", "q0", "q0", q.one());
  NivatDecomposition d = nivat_decompose(pen, no_final);
  for (const Word& w : compatible_words(pen, 3)) {
    CHECK(nivat_eval(d, w) == q.zero());
  }
}
