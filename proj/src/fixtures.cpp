#include "wop/fixtures.hpp"

namespace wop::fixtures {

OpAlphabet expr_opm() {
  OpAlphabet m({"+", "x", "(", ")", "n"});
  m.set("+", "+", Prec::kTakes);
  m.set("+", "x", Prec::kYields);
  m.set("+", "(", Prec::kYields);
  m.set("+", ")", Prec::kTakes);
  m.set("+", "n", Prec::kYields);
  m.set("x", "+", Prec::kTakes);
  m.set("x", "x", Prec::kTakes);
  m.set("x", "(", Prec::kYields);
  m.set("x", ")", Prec::kTakes);
  m.set("x", "n", Prec::kYields);
  m.set("(", "+", Prec::kYields);
  m.set("(", "x", Prec::kYields);
  m.set("(", "(", Prec::kYields);
  m.set("(", ")", Prec::kEqual);
  m.set("(", "n", Prec::kYields);
  m.set(")", "+", Prec::kTakes);
  m.set(")", "x", Prec::kTakes);
  m.set(")", ")", Prec::kTakes);
  m.set("n", "+", Prec::kTakes);
  m.set("n", "x", Prec::kTakes);
  m.set("n", ")", Prec::kTakes);
  return m;
}

Opa expr_opa() {
  Opa a;
  for (const char* q : {"0", "1", "2", "3"}) a.add_state(q);
  a.add_initial("0");
  a.add_final("1");
  a.add_final("3");
  a.add_push("0", "n", "1");
  a.add_push("0", "(", "2");
  a.add_push("1", "+", "0");
  a.add_push("1", "x", "0");
  a.add_push("2", "n", "3");
  a.add_push("2", "(", "2");
  a.add_push("3", "+", "2");
  a.add_push("3", "x", "2");
  a.add_shift("3", ")", "3");
  a.add_pop("1", "0", "1");
  a.add_pop("1", "1", "1");
  a.add_pop("3", "0", "3");
  a.add_pop("3", "1", "3");
  a.add_pop("3", "2", "3");
  a.add_pop("3", "3", "3");
  return a;
}

OpAlphabet penalty_opm() {
  OpAlphabet m({"call", "ret", "int"});
  m.set("call", "call", Prec::kYields);
  m.set("call", "ret", Prec::kEqual);
  m.set("call", "int", Prec::kTakes);
  m.set("int", "int", Prec::kYields);
  m.set("int", "call", Prec::kTakes);
  m.set("ret", "call", Prec::kTakes);
  m.set("ret", "ret", Prec::kTakes);
  m.set("ret", "int", Prec::kTakes);
  return m;
}

WeightedOpa penalty() {
  Semiring sr = Semiring::rational();
  WeightedOpa a(Opa{}, sr);
  a.base().add_state("q0");
  a.base().add_initial("q0");
  a.base().add_final("q0");
  a.add_push("q0", "call", "q0", sr.from_rational(Rational(1, 2)));
  a.add_push("q0", "int", "q0", sr.from_rational(Rational(1)));
  a.add_shift("q0", "ret", "q0", sr.from_rational(Rational(2)));
  a.add_pop("q0", "q0", "q0", sr.from_rational(Rational(1)));
  return a;
}

OpAlphabet policy_opm() {
  OpAlphabet m({"call", "ret", "int", "$"});
  m.set("call", "call", Prec::kYields);
  m.set("call", "ret", Prec::kEqual);
  m.set("call", "int", Prec::kTakes);
  m.set("int", "int", Prec::kYields);
  m.set("int", "call", Prec::kTakes);
  m.set("ret", "call", Prec::kTakes);
  m.set("ret", "ret", Prec::kTakes);
  m.set("ret", "int", Prec::kTakes);
  // The marker yields to nothing: a < $ for the other symbols, $ > a for
  // every a including $ itself.
  m.set("call", "$", Prec::kYields);
  m.set("ret", "$", Prec::kYields);
  m.set("int", "$", Prec::kYields);
  m.set("$", "call", Prec::kTakes);
  m.set("$", "ret", Prec::kTakes);
  m.set("$", "int", Prec::kTakes);
  m.set("$", "$", Prec::kTakes);
  return m;
}

WeightedOpa policy() {
  Semiring sr = Semiring::max_plus();
  auto w = [&](std::int64_t v) { return sr.from_rational(Rational(v)); };
  WeightedOpa a(Opa{}, sr);
  for (const char* q : {"q0", "q1", "q2"}) a.base().add_state(q);
  a.base().add_initial("q0");
  a.base().add_final("q2");
  // q0: free interval before the penalized one.
  a.add_push("q0", "$", "q0", w(0));
  a.add_push("q0", "int", "q0", w(0));
  a.add_push("q0", "call", "q0", w(0));
  a.add_shift("q0", "ret", "q0", w(0));
  a.add_pop("q0", "q0", "q0", w(0));
  a.add_push("q0", "$", "q1", w(0));
  // q1: calls cost 1, returns give 1 back.
  a.add_push("q1", "call", "q1", w(1));
  a.add_shift("q1", "ret", "q1", w(-1));
  a.add_push("q1", "int", "q1", w(0));
  a.add_pop("q1", "q0", "q1", w(0));
  a.add_pop("q1", "q1", "q1", w(0));
  a.add_push("q1", "$", "q2", w(0));
  // q2: free interval after.
  a.add_push("q2", "$", "q2", w(0));
  a.add_push("q2", "call", "q2", w(0));
  a.add_shift("q2", "ret", "q2", w(0));
  a.add_push("q2", "int", "q2", w(0));
  a.add_pop("q2", "q0", "q2", w(0));
  a.add_pop("q2", "q1", "q2", w(0));
  a.add_pop("q2", "q2", "q2", w(0));
  return a;
}

WeightedOpa log_automaton() {
  Semiring sr = Semiring::fin_lang("cipr");
  auto w = [&](const char* s) { return sr.from_lang(LangSet{s}); };
  const Weight eps = sr.one();
  WeightedOpa a(Opa{}, sr);
  a.base().add_state("q0");
  a.base().add_state("q1");
  a.base().add_initial("q0");
  a.base().add_final("q0");
  a.base().add_final("q1");
  // q0 logs everything, including pops; q1 logs interrupts only.
  a.add_push("q0", "call", "q0", w("c"));
  a.add_push("q0", "int", "q0", w("i"));
  a.add_shift("q0", "ret", "q0", w("r"));
  a.add_pop("q0", "q0", "q0", w("p"));
  a.add_push("q0", "call", "q1", eps);
  a.add_push("q1", "call", "q0", eps);
  a.add_push("q1", "call", "q1", eps);
  a.add_push("q1", "int", "q1", w("i"));
  a.add_shift("q1", "ret", "q1", eps);
  a.add_pop("q1", "q0", "q1", eps);
  a.add_pop("q1", "q1", "q1", eps);
  return a;
}

OpAlphabet separation_opm() {
  OpAlphabet m({"c", "r"});
  m.set("c", "c", Prec::kYields);
  m.set("c", "r", Prec::kEqual);
  return m;
}

WeightedOpa separation() {
  Semiring sr = Semiring::fin_lang("ab");
  WeightedOpa a(Opa{}, sr);
  a.base().add_state("q0");
  a.base().add_state("q1");
  a.base().add_state("q2");
  a.base().add_initial("q0");
  a.base().add_final("q1");
  a.base().add_final("q2");
  a.add_push("q0", "c", "q0", sr.from_lang(LangSet{"a"}));
  a.add_shift("q0", "r", "q1", sr.from_lang(LangSet{"b"}));
  a.add_pop("q1", "q0", "q1", sr.from_lang(LangSet{"a"}));
  // The bare word "r" carries {b} as well; it enters through its own push
  // so the {a}-pop of the main branch never touches it.
  a.add_push("q0", "r", "q2", sr.from_lang(LangSet{"b"}));
  a.add_pop("q2", "q0", "q2", sr.one());
  return a;
}

OpAlphabet single_push_opm() {
  OpAlphabet m({"a"});
  m.set("a", "a", Prec::kYields);
  return m;
}

WeightedOpa single_push() {
  Semiring sr = Semiring::rational();
  WeightedOpa a(Opa{}, sr);
  a.base().add_state("q");
  a.base().add_initial("q");
  a.base().add_final("q");
  a.add_push("q", "a", "q", sr.from_rational(Rational(1, 2)));
  a.add_pop("q", "q", "q", sr.from_rational(Rational(1)));
  return a;
}

VpPartition car_partition() {
  return VpPartition{{"c"}, {"a"}, {"r"}};
}

WeightedNwa example_nwa() {
  Semiring sr = Semiring::rational();
  WeightedNwa n(car_partition(), sr);
  for (const char* q : {"q0", "q1", "q2", "q3", "q4"}) n.add_state(q);
  n.add_initial("q0");
  n.add_final("q4");
  n.add_internal("q0", "a", "q1", sr.from_rational(Rational(2)));
  n.add_call("q1", "c", "q2", sr.from_rational(Rational(3)));
  n.add_internal("q2", "a", "q3", sr.from_rational(Rational(5)));
  n.add_return("q3", "q1", "r", "q4", sr.from_rational(Rational(7)));
  return n;
}

Formula::Ptr policy_chi() {
  Semiring sr = Semiring::max_plus();
  auto k = [&](std::int64_t v) {
    return Formula::constant(sr.from_rational(Rational(v)));
  };
  using Fm = Formula;

  auto lab_dollar = [](const std::string& v) { return Fm::lab("$", v); };

  // x in X0 <-> exists y,z after x labelled $; X2 symmetric before x; X1 is
  // an interval between two $ with no $ strictly inside.
  Fm::Ptr in0 = Fm::iff(
      Fm::in("x", "X0"),
      Fm::exists1("y", Fm::exists1("z", Fm::big_and({Fm::gt("y", "x"), Fm::gt("z", "x"),
                                                     lab_dollar("y"), lab_dollar("z")}))));
  Fm::Ptr in1 = Fm::iff(
      Fm::in("x", "X1"),
      Fm::exists1(
          "y", Fm::exists1(
                   "z", Fm::big_and(
                            {Fm::le("y", "x"), Fm::le("x", "z"), lab_dollar("y"),
                             lab_dollar("z"),
                             Fm::implies(Fm::and_(Fm::ne("x", "y"), Fm::ne("x", "z")),
                                         Fm::not_(lab_dollar("x")))}))));
  Fm::Ptr in2 = Fm::iff(
      Fm::in("x", "X2"),
      Fm::exists1("y", Fm::exists1("z", Fm::big_and({Fm::lt("y", "x"), Fm::lt("z", "x"),
                                                     lab_dollar("y"), lab_dollar("z")}))));
  Fm::Ptr beta = Fm::big_and({in0, in1, in2});

  Fm::Ptr phi02 = Fm::oplus(
      Fm::not_(Fm::and_(
          Fm::or_(Fm::in("x", "X0"), Fm::in("x", "X2")),
          Fm::big_or({Fm::lab("call", "x"), Fm::lab("ret", "x"), Fm::lab("int", "x")}))),
      k(0));

  Fm::Ptr phi1 = Fm::otimes(
      Fm::otimes(
          Fm::otimes(
              Fm::oplus(Fm::not_(Fm::and_(Fm::in("x", "X1"), Fm::lab("call", "x"))), k(1)),
              Fm::oplus(Fm::not_(Fm::and_(Fm::in("x", "X1"), Fm::lab("ret", "x"))), k(-1))),
          Fm::oplus(Fm::not_(Fm::and_(Fm::in("x", "X1"), Fm::lab("int", "x"))), k(0))),
      Fm::oplus(Fm::not_(lab_dollar("x")), k(0)));

  Fm::Ptr psi = Fm::prod1("x", Fm::otimes(Fm::otimes(beta, phi02), phi1));
  return Fm::sum2("X0", Fm::sum2("X1", Fm::sum2("X2", psi)));
}

Opa first_symbol_opa(const OpAlphabet& alpha, const std::string& first) {
  Opa a;
  a.add_state("start");
  a.add_state("acc");
  a.add_state("rej");
  a.add_initial("start");
  a.add_final("acc");
  for (const auto& s : alpha.symbols()) {
    a.add_push("start", s, s == first ? "acc" : "rej");
    for (const char* q : {"acc", "rej"}) {
      a.add_push(q, s, q);
      a.add_shift(q, s, q);
    }
  }
  for (const char* q : {"acc", "rej"}) {
    a.add_pop(q, "start", q);
    a.add_pop(q, q, q);
  }
  return a;
}

}  // namespace wop::fixtures
