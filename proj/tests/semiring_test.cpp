#include "wop/semiring.hpp"

#include <doctest.h>

#include <random>

#include "wop/error.hpp"

using namespace wop;

TEST_CASE("rational arithmetic is exact and normalized") {
  CHECK(Rational(1, 2) + Rational(1, 2) == Rational(1));
  CHECK(Rational(1, 2) * Rational(2) == Rational(1));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK(Rational::parse("-3/6") == Rational(-1, 2));
  CHECK(Rational(1, 3).str() == "1/3");
  CHECK(Rational(-4, 2).str() == "-2");
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS_AS(Rational::parse("x"), ParseError);
  CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
}

TEST_CASE("addition in each instance") {
  Semiring q = Semiring::rational();
  CHECK(q.add(q.parse_weight("1/2"), q.parse_weight("1/2")) == q.parse_weight("1"));

  Semiring mp = Semiring::max_plus();
  CHECK(mp.add(mp.parse_weight("-inf"), mp.parse_weight("3")) == mp.parse_weight("3"));

  Semiring fl = Semiring::fin_lang("ab");
  CHECK(fl.add(fl.parse_weight("[\"a\"]"), fl.parse_weight("[\"b\"]")) ==
        fl.parse_weight("[\"a\",\"b\"]"));
}

TEST_CASE("ordered product keeps factor order") {
  Semiring fl = Semiring::fin_lang("ab");
  Weight a = fl.parse_weight("[\"a\"]");
  Weight b = fl.parse_weight("[\"b\"]");
  CHECK(fl.mul_ordered({a, b, a}) == fl.parse_weight("[\"aba\"]"));

  Semiring q = Semiring::rational();
  CHECK(q.mul_ordered({q.parse_weight("1/2"), q.parse_weight("2")}) == q.one());
  CHECK(q.mul_ordered({}) == q.one());
  CHECK(fl.mul_ordered({}) == fl.one());
}

TEST_CASE("ordered product of singleton languages concatenates") {
  Semiring fl = Semiring::fin_lang("abc");
  std::mt19937 rng(7);
  const std::string alphabet = "abc";
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Weight> factors;
    std::string expected;
    int len = static_cast<int>(rng() % 6);
    for (int i = 0; i < len; ++i) {
      std::string s(1, alphabet[rng() % 3]);
      factors.push_back(fl.from_lang(LangSet{s}));
      expected += s;
    }
    CHECK(fl.mul_ordered(factors) == fl.from_lang(LangSet{expected}));
  }
}

TEST_CASE("semiring mismatch is rejected") {
  Semiring q = Semiring::rational();
  Semiring mp = Semiring::max_plus();
  CHECK_THROWS_AS(q.add(q.one(), mp.one()), PreconditionError);
  CHECK_THROWS_AS(q.mul(mp.one(), q.one()), PreconditionError);
}

TEST_CASE("laws hold on sampled elements for every instance") {
  {
    Semiring q = Semiring::rational();
    std::vector<Weight> samples{q.parse_weight("0"), q.parse_weight("1"),
                                q.parse_weight("1/2"), q.parse_weight("3"),
                                q.parse_weight("-2/3")};
    CHECK(laws_check(q, samples).ok());
  }
  {
    Semiring mp = Semiring::max_plus();
    std::vector<Weight> samples{mp.parse_weight("-inf"), mp.parse_weight("0"),
                                mp.parse_weight("1"), mp.parse_weight("-5/2")};
    CHECK(laws_check(mp, samples).ok());
  }
  {
    Semiring mn = Semiring::min_plus();
    std::vector<Weight> samples{mn.parse_weight("inf"), mn.parse_weight("0"),
                                mn.parse_weight("7"), mn.parse_weight("-1")};
    CHECK(laws_check(mn, samples).ok());
  }
  {
    Semiring b = Semiring::boolean();
    CHECK(laws_check(b, {b.zero(), b.one()}).ok());
  }
  {
    Semiring fl = Semiring::fin_lang("ab");
    std::vector<Weight> samples{fl.parse_weight("[]"), fl.parse_weight("[\"\"]"),
                                fl.parse_weight("[\"a\"]"), fl.parse_weight("[\"b\"]")};
    CHECK(laws_check(fl, samples).ok());
    LawsReport probed = laws_check(fl, samples, /*probe_commutativity=*/true);
    REQUIRE_FALSE(probed.ok());
    bool found = false;
    for (const auto& v : probed.violations) {
      if (v.find("commutativity of *") != std::string::npos) found = true;
    }
    CHECK(found);
  }
}

TEST_CASE("commutativity flags") {
  CHECK(Semiring::boolean().commutative());
  CHECK(Semiring::rational().commutative());
  CHECK(Semiring::max_plus().commutative());
  CHECK(Semiring::min_plus().commutative());
  CHECK_FALSE(Semiring::fin_lang("ab").commutative());
}

TEST_CASE("weight literals round trip") {
  auto roundtrip = [](const Semiring& sr, const std::string& lit) {
    CHECK(sr.format_weight(sr.parse_weight(lit)) == lit);
  };
  roundtrip(Semiring::boolean(), "0");
  roundtrip(Semiring::boolean(), "1");
  roundtrip(Semiring::rational(), "-7/3");
  roundtrip(Semiring::rational(), "5");
  roundtrip(Semiring::max_plus(), "-inf");
  roundtrip(Semiring::max_plus(), "3/2");
  roundtrip(Semiring::min_plus(), "inf");
  roundtrip(Semiring::fin_lang("ab"), "[]");
  roundtrip(Semiring::fin_lang("ab"), "[\"\"]");
  roundtrip(Semiring::fin_lang("ab"), "[\"a\",\"ab\"]");

  CHECK_THROWS_AS(Semiring::max_plus().parse_weight("inf"), ParseError);
  CHECK_THROWS_AS(Semiring::fin_lang("ab").parse_weight("[\"z\"]"), ParseError);
  CHECK_THROWS_AS(Semiring::boolean().parse_weight("2"), ParseError);
}

TEST_CASE("semiring ids parse back") {
  for (const char* id : {"boolean", "rational", "max-plus", "min-plus", "fin-lang(ab)"}) {
    CHECK(Semiring::from_id(id).id() == id);
  }
  CHECK_THROWS_AS(Semiring::from_id("float"), ParseError);
}
