#include "wop/io.hpp"

#include <fstream>

namespace wop {

namespace {

const Json& field(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) {
    throw ParseError("bad-file", std::string("missing field: ") + name);
  }
  return *it;
}

std::string str_field(const Json& j, const char* name) {
  const Json& f = field(j, name);
  if (!f.is_string()) {
    throw ParseError("bad-file", std::string("field is not a string: ") + name);
  }
  return f.get<std::string>();
}

std::vector<std::string> str_list(const Json& j, const char* name) {
  const Json& f = field(j, name);
  if (!f.is_array()) {
    throw ParseError("bad-file", std::string("field is not an array: ") + name);
  }
  std::vector<std::string> out;
  for (const auto& e : f) out.push_back(e.get<std::string>());
  return out;
}

}  // namespace

OpAlphabet alphabet_from_json(const Json& j) {
  OpAlphabet alpha(str_list(j, "symbols"));
  for (const auto& e : field(j, "matrix")) {
    alpha.set(str_field(e, "a"), str_field(e, "b"), prec_parse(str_field(e, "rel")));
  }
  return alpha;
}

Json alphabet_to_json(const OpAlphabet& alpha) {
  Json j;
  j["symbols"] = alpha.symbols();
  Json matrix = Json::array();
  for (const auto& [pair, rel] : alpha.entries()) {
    matrix.push_back(Json{{"a", pair.first}, {"b", pair.second}, {"rel", prec_str(rel)}});
  }
  j["matrix"] = std::move(matrix);
  return j;
}

Opa opa_from_json(const Json& j) {
  Opa a;
  for (const auto& q : str_list(j, "states")) a.add_state(q);
  for (const auto& q : str_list(j, "initial")) a.add_initial(q);
  for (const auto& q : str_list(j, "final")) a.add_final(q);
  if (j.contains("push")) {
    for (const auto& e : j.at("push")) {
      a.add_push(str_field(e, "from"), str_field(e, "sym"), str_field(e, "to"));
    }
  }
  if (j.contains("shift")) {
    for (const auto& e : j.at("shift")) {
      a.add_shift(str_field(e, "from"), str_field(e, "sym"), str_field(e, "to"));
    }
  }
  if (j.contains("pop")) {
    for (const auto& e : j.at("pop")) {
      a.add_pop(str_field(e, "from"), str_field(e, "stack"), str_field(e, "to"));
    }
  }
  return a;
}

Json opa_to_json(const Opa& a) {
  Json j;
  j["states"] = a.states();
  j["initial"] = a.initial();
  j["final"] = a.final();
  Json push = Json::array();
  for (const auto& [f, s, t] : a.push()) {
    push.push_back(Json{{"from", f}, {"sym", s}, {"to", t}});
  }
  Json shift = Json::array();
  for (const auto& [f, s, t] : a.shift()) {
    shift.push_back(Json{{"from", f}, {"sym", s}, {"to", t}});
  }
  Json pop = Json::array();
  for (const auto& [f, s, t] : a.pop()) {
    pop.push_back(Json{{"from", f}, {"stack", s}, {"to", t}});
  }
  j["push"] = std::move(push);
  j["shift"] = std::move(shift);
  j["pop"] = std::move(pop);
  return j;
}

WeightedOpa wopa_from_json(const Json& j) {
  Semiring sr = Semiring::from_id(str_field(j, "semiring"));
  Opa base;
  for (const auto& q : str_list(j, "states")) base.add_state(q);
  for (const auto& q : str_list(j, "initial")) base.add_initial(q);
  for (const auto& q : str_list(j, "final")) base.add_final(q);
  WeightedOpa a(std::move(base), sr);
  const Json& weights = field(j, "weights");
  if (weights.contains("push")) {
    for (const auto& e : weights.at("push")) {
      a.add_push(str_field(e, "from"), str_field(e, "sym"), str_field(e, "to"),
                 sr.parse_weight(str_field(e, "w")));
    }
  }
  if (weights.contains("shift")) {
    for (const auto& e : weights.at("shift")) {
      a.add_shift(str_field(e, "from"), str_field(e, "sym"), str_field(e, "to"),
                  sr.parse_weight(str_field(e, "w")));
    }
  }
  if (weights.contains("pop")) {
    for (const auto& e : weights.at("pop")) {
      a.add_pop(str_field(e, "from"), str_field(e, "stack"), str_field(e, "to"),
                sr.parse_weight(str_field(e, "w")));
    }
  }
  return a;
}

Json wopa_to_json(const WeightedOpa& a) {
  const Semiring& sr = a.semiring();
  Json j;
  j["semiring"] = sr.id();
  j["states"] = a.base().states();
  j["initial"] = a.base().initial();
  j["final"] = a.base().final();
  Json push = Json::array();
  for (const auto& [t, w] : a.push_weights()) {
    push.push_back(Json{{"from", std::get<0>(t)},
                        {"sym", std::get<1>(t)},
                        {"to", std::get<2>(t)},
                        {"w", sr.format_weight(w)}});
  }
  Json shift = Json::array();
  for (const auto& [t, w] : a.shift_weights()) {
    shift.push_back(Json{{"from", std::get<0>(t)},
                         {"sym", std::get<1>(t)},
                         {"to", std::get<2>(t)},
                         {"w", sr.format_weight(w)}});
  }
  Json pop = Json::array();
  for (const auto& [t, w] : a.pop_weights()) {
    pop.push_back(Json{{"from", std::get<0>(t)},
                       {"stack", std::get<1>(t)},
                       {"to", std::get<2>(t)},
                       {"w", sr.format_weight(w)}});
  }
  j["weights"] = Json{{"push", std::move(push)},
                      {"shift", std::move(shift)},
                      {"pop", std::move(pop)}};
  return j;
}

WeightedNwa nwa_from_json(const Json& j) {
  Semiring sr = Semiring::from_id(str_field(j, "semiring"));
  const Json& part = field(j, "partition");
  VpPartition partition{str_list(part, "call"), str_list(part, "int"),
                        str_list(part, "ret")};
  WeightedNwa n(std::move(partition), sr);
  for (const auto& q : str_list(j, "states")) n.add_state(q);
  for (const auto& q : str_list(j, "initial")) n.add_initial(q);
  for (const auto& q : str_list(j, "final")) n.add_final(q);
  if (j.contains("call")) {
    for (const auto& e : j.at("call")) {
      n.add_call(str_field(e, "from"), str_field(e, "sym"), str_field(e, "to"),
                 sr.parse_weight(str_field(e, "w")));
    }
  }
  if (j.contains("int")) {
    for (const auto& e : j.at("int")) {
      n.add_internal(str_field(e, "from"), str_field(e, "sym"), str_field(e, "to"),
                     sr.parse_weight(str_field(e, "w")));
    }
  }
  if (j.contains("ret")) {
    for (const auto& e : j.at("ret")) {
      n.add_return(str_field(e, "from"), str_field(e, "stack"), str_field(e, "sym"),
                   str_field(e, "to"), sr.parse_weight(str_field(e, "w")));
    }
  }
  return n;
}

Json nwa_to_json(const WeightedNwa& n) {
  const Semiring& sr = n.semiring();
  Json j;
  j["semiring"] = sr.id();
  j["partition"] = Json{{"call", n.partition().call},
                        {"int", n.partition().internal},
                        {"ret", n.partition().ret}};
  j["states"] = n.states();
  j["initial"] = n.initial();
  j["final"] = n.final();
  Json calls = Json::array();
  for (const auto& [t, w] : n.calls()) {
    calls.push_back(Json{{"from", std::get<0>(t)},
                         {"sym", std::get<1>(t)},
                         {"to", std::get<2>(t)},
                         {"w", sr.format_weight(w)}});
  }
  Json ints = Json::array();
  for (const auto& [t, w] : n.internals()) {
    ints.push_back(Json{{"from", std::get<0>(t)},
                        {"sym", std::get<1>(t)},
                        {"to", std::get<2>(t)},
                        {"w", sr.format_weight(w)}});
  }
  Json rets = Json::array();
  for (const auto& [t, w] : n.returns()) {
    rets.push_back(Json{{"from", std::get<0>(t)},
                        {"stack", std::get<1>(t)},
                        {"sym", std::get<2>(t)},
                        {"to", std::get<3>(t)},
                        {"w", sr.format_weight(w)}});
  }
  j["call"] = std::move(calls);
  j["int"] = std::move(ints);
  j["ret"] = std::move(rets);
  return j;
}

StepFunction step_from_json(const Json& j) {
  Semiring sr = Semiring::from_id(str_field(j, "semiring"));
  std::vector<StepPart> parts;
  for (const auto& e : field(j, "parts")) {
    parts.push_back(StepPart{opa_from_json(field(e, "automaton")),
                             sr.parse_weight(str_field(e, "weight"))});
  }
  return StepFunction(sr, std::move(parts));
}

Json step_to_json(const StepFunction& s, const Semiring& sr) {
  Json j;
  j["semiring"] = sr.id();
  Json parts = Json::array();
  for (const auto& p : s.parts()) {
    parts.push_back(Json{{"automaton", opa_to_json(p.automaton)},
                         {"weight", sr.format_weight(p.weight)}});
  }
  j["parts"] = std::move(parts);
  return j;
}

namespace {

Formula::Ptr node_from_json(const Json& j, const Semiring& sr) {
  std::string op = str_field(j, "op");
  auto f = [&](const char* name) { return node_from_json(field(j, name), sr); };
  if (op == "lab") return Formula::lab(str_field(j, "a"), str_field(j, "x"));
  if (op == "le") return Formula::le(str_field(j, "x"), str_field(j, "y"));
  if (op == "chain") return Formula::chain(str_field(j, "x"), str_field(j, "y"));
  if (op == "in") return Formula::in(str_field(j, "x"), str_field(j, "X"));
  if (op == "not") return Formula::not_(f("f"));
  if (op == "or") return Formula::or_(f("l"), f("r"));
  if (op == "exists1") return Formula::exists1(str_field(j, "x"), f("f"));
  if (op == "exists2") return Formula::exists2(str_field(j, "X"), f("f"));
  if (op == "const") return Formula::constant(sr.parse_weight(str_field(j, "w")));
  if (op == "oplus") return Formula::oplus(f("l"), f("r"));
  if (op == "otimes") return Formula::otimes(f("l"), f("r"));
  if (op == "sum1") return Formula::sum1(str_field(j, "x"), f("f"));
  if (op == "sum2") return Formula::sum2(str_field(j, "X"), f("f"));
  if (op == "prod1") return Formula::prod1(str_field(j, "x"), f("f"));
  // Sugar, expanded on load.
  if (op == "and") return Formula::and_(f("l"), f("r"));
  if (op == "imp") return Formula::implies(f("l"), f("r"));
  if (op == "iff") return Formula::iff(f("l"), f("r"));
  if (op == "forall1") return Formula::forall1(str_field(j, "x"), f("f"));
  if (op == "eq") return Formula::eq(str_field(j, "x"), str_field(j, "y"));
  if (op == "lt") return Formula::lt(str_field(j, "x"), str_field(j, "y"));
  if (op == "gt") return Formula::gt(str_field(j, "x"), str_field(j, "y"));
  if (op == "ne") return Formula::ne(str_field(j, "x"), str_field(j, "y"));
  if (op == "succ") return Formula::succ(str_field(j, "x"), str_field(j, "y"));
  if (op == "min") return Formula::min(str_field(j, "x"));
  if (op == "max") return Formula::max(str_field(j, "x"));
  if (op == "ite") {
    return Formula::ite(f("c"), sr.parse_weight(str_field(j, "then")),
                        sr.parse_weight(str_field(j, "else")));
  }
  if (op == "true") return Formula::true_();
  if (op == "false") return Formula::false_();
  throw ParseError("bad-formula", "unknown formula op: " + op);
}

Json node_to_json(const Formula::Ptr& f, const Semiring& sr) {
  switch (f->op()) {
    case Formula::Op::kLab:
      return Json{{"op", "lab"}, {"a", f->symbol()}, {"x", f->var()}};
    case Formula::Op::kLe:
      return Json{{"op", "le"}, {"x", f->var()}, {"y", f->var2()}};
    case Formula::Op::kChain:
      return Json{{"op", "chain"}, {"x", f->var()}, {"y", f->var2()}};
    case Formula::Op::kIn:
      return Json{{"op", "in"}, {"x", f->var()}, {"X", f->var2()}};
    case Formula::Op::kNot:
      return Json{{"op", "not"}, {"f", node_to_json(f->left(), sr)}};
    case Formula::Op::kOr:
      return Json{{"op", "or"},
                  {"l", node_to_json(f->left(), sr)},
                  {"r", node_to_json(f->right(), sr)}};
    case Formula::Op::kExists1:
      return Json{{"op", "exists1"}, {"x", f->var()}, {"f", node_to_json(f->left(), sr)}};
    case Formula::Op::kExists2:
      return Json{{"op", "exists2"}, {"X", f->var()}, {"f", node_to_json(f->left(), sr)}};
    case Formula::Op::kConst:
      return Json{{"op", "const"}, {"w", sr.format_weight(f->weight())}};
    case Formula::Op::kOplus:
      return Json{{"op", "oplus"},
                  {"l", node_to_json(f->left(), sr)},
                  {"r", node_to_json(f->right(), sr)}};
    case Formula::Op::kOtimes:
      return Json{{"op", "otimes"},
                  {"l", node_to_json(f->left(), sr)},
                  {"r", node_to_json(f->right(), sr)}};
    case Formula::Op::kSum1:
      return Json{{"op", "sum1"}, {"x", f->var()}, {"f", node_to_json(f->left(), sr)}};
    case Formula::Op::kSum2:
      return Json{{"op", "sum2"}, {"X", f->var()}, {"f", node_to_json(f->left(), sr)}};
    case Formula::Op::kProd1:
      return Json{{"op", "prod1"}, {"x", f->var()}, {"f", node_to_json(f->left(), sr)}};
  }
  throw std::logic_error("unreachable");
}

}  // namespace

FormulaFile formula_from_json(const Json& j) {
  Semiring sr = Semiring::from_id(str_field(j, "semiring"));
  Formula::Ptr f = node_from_json(field(j, "formula"), sr);
  return FormulaFile{std::move(sr), std::move(f)};
}

Json formula_to_json(const Formula::Ptr& f, const Semiring& sr) {
  Json j;
  j["semiring"] = sr.id();
  j["formula"] = node_to_json(f, sr);
  return j;
}

NivatDecomposition nivat_from_json(const Json& j) {
  OpAlphabet extended = alphabet_from_json(field(j, "alphabet"));
  SymbolMap h;
  for (const auto& [key, value] : field(j, "map").items()) {
    h[key] = value.get<std::string>();
  }
  WeightedOpa b = wopa_from_json(field(j, "b"));
  Opa lang = opa_from_json(field(j, "lang"));
  return NivatDecomposition{std::move(extended), std::move(h), std::move(b),
                            std::move(lang)};
}

Json nivat_to_json(const NivatDecomposition& d) {
  Json j;
  j["alphabet"] = alphabet_to_json(d.extended);
  Json map = Json::object();
  for (const auto& [k, v] : d.h) map[k] = v;
  j["map"] = std::move(map);
  j["b"] = wopa_to_json(d.b);
  j["lang"] = opa_to_json(d.lang);
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("bad-file", "cannot open file: " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("bad-file", "invalid JSON in " + path + ": " + e.what());
  }
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("bad-file", "cannot write file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace wop
