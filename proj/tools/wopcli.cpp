// Command line front end: evaluation, constructions, and bounded
// differential comparison of weighted operator precedence automata.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wop/constructions.hpp"
#include "wop/io.hpp"
#include "wop/mso.hpp"

using namespace wop;

namespace {

constexpr int kMaxLenCap = 10;

struct Output {
  bool json = false;

  void ok_line(const std::string& text, const Json& payload) const {
    if (json) {
      Json j;
      j["status"] = "ok";
      j.update(payload);
      std::cout << j.dump() << "\n";
    } else {
      std::cout << text << "\n";
    }
  }
};

int clamp_len(int n) {
  if (n < 0) n = 0;
  return std::min(n, kMaxLenCap);
}

std::vector<Word> words_from(const std::string& arg,
                             const std::string& words_file) {
  std::vector<Word> out;
  if (!arg.empty()) out.push_back(parse_word(arg));
  if (!words_file.empty()) {
    std::ifstream in(words_file);
    if (!in) throw ParseError("bad-file", "cannot open file: " + words_file);
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      out.push_back(parse_word(line));
    }
  }
  if (out.empty()) throw ParseError("bad-word", "no word given");
  return out;
}

// A series source for `diff`: a weighted automaton, a step function, or a
// sentence, told apart by their fields. Unweighted automata are lifted over
// the requested semiring with weight one everywhere.
struct Series {
  std::optional<WeightedOpa> automaton;
  std::optional<StepFunction> step;
  std::optional<FormulaFile> formula;

  static Series load(const std::string& path, const std::string& lift_semiring) {
    Json j = load_json_file(path);
    Series s;
    if (j.contains("weights")) {
      s.automaton = wopa_from_json(j);
    } else if (j.contains("states")) {
      s.automaton =
          lift_boolean(opa_from_json(j), Semiring::from_id(lift_semiring));
    } else if (j.contains("parts")) {
      s.step = step_from_json(j);
    } else if (j.contains("formula")) {
      s.formula = formula_from_json(j);
      FreeVars fv = free_vars(s.formula->formula);
      if (!fv.first.empty() || !fv.second.empty()) {
        throw PreconditionError("unbound-variable",
                                "diff needs a sentence (no free variables)");
      }
    } else {
      throw ParseError("bad-file",
                       "not a series source (expected a weighted automaton, "
                       "step function, or formula): " +
                           path);
    }
    return s;
  }

  std::string semiring_id() const {
    if (automaton) return automaton->semiring().id();
    if (step) return step->semiring().id();
    return formula->semiring.id();
  }

  Weight eval(const OpAlphabet& alpha, const Word& w) const {
    if (automaton) return behavior(alpha, *automaton, w);
    if (step) return step_eval(*step, alpha, w);
    return mso_eval(alpha, formula->semiring, formula->formula, w, Assignment{});
  }
};

std::string dot_render(const Json& aut) {
  // Plain structural rendering; weights in parentheses when present.
  std::string out = "digraph opa {\n  rankdir=LR;\n";
  bool weighted = aut.contains("weights");
  auto esc = [](const std::string& s) {
    std::string r;
    for (char c : s) {
      if (c == '"' || c == '\\') r += '\\';
      r += c;
    }
    return r;
  };
  for (const auto& q : aut.at("states")) {
    std::string name = q.get<std::string>();
    bool is_final = false;
    for (const auto& f : aut.at("final")) is_final |= f == q;
    out += "  \"" + esc(name) + "\"" + (is_final ? " [peripheries=2];\n" : ";\n");
  }
  int start = 0;
  for (const auto& q : aut.at("initial")) {
    std::string entry = "start" + std::to_string(start++);
    out += "  \"" + entry + "\" [shape=point];\n";
    out += "  \"" + entry + "\" -> \"" + esc(q.get<std::string>()) + "\";\n";
  }
  const Json& edges = weighted ? aut.at("weights") : aut;
  struct Kind {
    const char* key;
    const char* field;
    const char* style;
  };
  for (const Kind& k : {Kind{"push", "sym", "solid"},
                        Kind{"shift", "sym", "dashed"},
                        Kind{"pop", "stack", "bold"}}) {
    if (!edges.contains(k.key)) continue;
    for (const auto& e : edges.at(k.key)) {
      std::string label = e.at(k.field).get<std::string>();
      if (weighted) label += " (" + e.at("w").get<std::string>() + ")";
      out += "  \"" + esc(e.at("from").get<std::string>()) + "\" -> \"" +
             esc(e.at("to").get<std::string>()) + "\" [label=\"" + esc(label) +
             "\", style=" + k.style + "];\n";
    }
  }
  out += "}\n";
  return out;
}

Assignment assignment_from_json(const Json& j) {
  Assignment sigma;
  for (const auto& [key, value] : j.items()) {
    if (value.is_number_integer()) {
      sigma.first[key] = value.get<int>();
    } else if (value.is_array()) {
      std::set<int> s;
      for (const auto& e : value) s.insert(e.get<int>());
      sigma.second[key] = s;
    } else {
      throw ParseError("bad-file", "assignment values are positions or arrays");
    }
  }
  return sigma;
}

int run(int argc, char** argv) {
  CLI::App app{"weighted operator precedence language toolkit"};
  app.require_subcommand(1);
  Output out;
  app.add_flag("--json", out.json, "machine-readable output and errors");

  std::string opm_path, target_opm_path, map_path, aut_path, other_path;
  std::string word_arg, words_file, out_path, scalar, bundle_path, emit_opm;
  std::string assign_json;
  std::string lift_semiring = "boolean";
  int max_len = 5;
  double budget = 24.0;

  auto add_words = [&](CLI::App* cmd) {
    cmd->add_option("word", word_arg, "whitespace-separated tokens");
    cmd->add_option("--words-file", words_file, "file with one word per line");
  };

  auto* chains_cmd = app.add_subcommand("chains", "chain relation of a word");
  chains_cmd->add_option("--opm", opm_path)->required();
  add_words(chains_cmd);

  auto* compat_cmd = app.add_subcommand("compat", "word compatibility with an OPM");
  compat_cmd->add_option("--opm", opm_path)->required();
  add_words(compat_cmd);

  auto* accepts_cmd = app.add_subcommand("accepts", "unweighted acceptance");
  accepts_cmd->add_option("--opm", opm_path)->required();
  accepts_cmd->add_option("automaton", aut_path)->required();
  add_words(accepts_cmd);

  auto* runs_cmd = app.add_subcommand("runs", "list accepting runs");
  runs_cmd->add_option("--opm", opm_path)->required();
  runs_cmd->add_option("automaton", aut_path)->required();
  add_words(runs_cmd);

  auto* eval_cmd = app.add_subcommand("eval", "weighted behavior of a word");
  eval_cmd->add_option("--opm", opm_path)->required();
  eval_cmd->add_option("automaton", aut_path)->required();
  eval_cmd->add_option("--semiring", lift_semiring,
                       "lift target for unweighted automata");
  add_words(eval_cmd);

  auto* sum_cmd = app.add_subcommand("sum", "pointwise sum of two automata");
  sum_cmd->add_option("a", aut_path)->required();
  sum_cmd->add_option("b", other_path)->required();
  sum_cmd->add_option("-o,--out", out_path);

  auto* intersect_cmd =
      app.add_subcommand("intersect", "restrict to a deterministic OPL");
  intersect_cmd->add_option("a", aut_path)->required();
  intersect_cmd->add_option("lang", other_path)->required();
  intersect_cmd->add_option("-o,--out", out_path);

  auto* hadamard_cmd = app.add_subcommand("hadamard", "pointwise product");
  hadamard_cmd->add_option("a", aut_path)->required();
  hadamard_cmd->add_option("b", other_path)->required();
  hadamard_cmd->add_option("-o,--out", out_path);

  auto* project_cmd =
      app.add_subcommand("project", "OPM-preserving projection of the behavior");
  project_cmd->add_option("--opm", opm_path, "source OPM")->required();
  project_cmd->add_option("--target-opm", target_opm_path)->required();
  project_cmd->add_option("--map", map_path, "JSON object source->target")->required();
  project_cmd->add_option("automaton", aut_path)->required();
  project_cmd->add_option("-o,--out", out_path);

  auto* scale_cmd = app.add_subcommand("scale", "left-multiply by a scalar");
  scale_cmd->add_option("-k,--scalar", scalar)->required();
  scale_cmd->add_option("automaton", aut_path)->required();
  scale_cmd->add_option("-o,--out", out_path);

  auto* unpop_cmd = app.add_subcommand("unpop", "eliminate pop weights");
  unpop_cmd->add_option("automaton", aut_path)->required();
  unpop_cmd->add_option("-o,--out", out_path);

  auto* from_nwa_cmd =
      app.add_subcommand("from-nwa", "embed a nested word automaton");
  from_nwa_cmd->add_option("automaton", aut_path)->required();
  from_nwa_cmd->add_option("-o,--out", out_path);
  from_nwa_cmd->add_option("--emit-opm", emit_opm, "write the induced OPM here");

  auto* nwa_eval_cmd = app.add_subcommand("nwa-eval", "nested word behavior");
  nwa_eval_cmd->add_option("automaton", aut_path)->required();
  add_words(nwa_eval_cmd);

  auto* nivat_d_cmd =
      app.add_subcommand("nivat-decompose", "one-state + language decomposition");
  nivat_d_cmd->add_option("--opm", opm_path)->required();
  nivat_d_cmd->add_option("automaton", aut_path)->required();
  nivat_d_cmd->add_option("-o,--out", out_path, "output directory")->required();

  auto* nivat_c_cmd =
      app.add_subcommand("nivat-check", "compare a bundle against an automaton");
  nivat_c_cmd->add_option("--opm", opm_path)->required();
  nivat_c_cmd->add_option("automaton", aut_path)->required();
  nivat_c_cmd->add_option("--bundle", bundle_path)->required();
  nivat_c_cmd->add_option("--max-len", max_len);

  auto* step_cmd = app.add_subcommand("step-eval", "evaluate a step function");
  step_cmd->add_option("--opm", opm_path)->required();
  step_cmd->add_option("step", aut_path)->required();
  add_words(step_cmd);

  auto* mso_eval_cmd = app.add_subcommand("mso-eval", "evaluate a formula");
  mso_eval_cmd->add_option("--opm", opm_path)->required();
  mso_eval_cmd->add_option("formula", aut_path)->required();
  mso_eval_cmd->add_option("--assign", assign_json,
                           "JSON assignment for free variables");
  mso_eval_cmd->add_option("--budget", budget, "log2 assignment-space budget");
  add_words(mso_eval_cmd);

  auto* classify_cmd = app.add_subcommand("mso-classify", "fragment membership");
  classify_cmd->add_option("formula", aut_path)->required();

  auto* to_mso_cmd = app.add_subcommand("to-mso", "automaton to sentence");
  to_mso_cmd->add_option("--opm", opm_path)->required();
  to_mso_cmd->add_option("automaton", aut_path)->required();
  to_mso_cmd->add_option("-o,--out", out_path);

  auto* diff_cmd =
      app.add_subcommand("diff", "bounded exhaustive comparison of two series");
  diff_cmd->add_option("--opm", opm_path)->required();
  diff_cmd->add_option("a", aut_path)->required();
  diff_cmd->add_option("b", other_path)->required();
  diff_cmd->add_option("--semiring", lift_semiring,
                       "lift target for unweighted automata");
  diff_cmd->add_option("--max-len", max_len);

  auto* dot_cmd = app.add_subcommand("dot", "DOT rendering of an automaton");
  dot_cmd->add_option("automaton", aut_path)->required();

  for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) {
    sub->fallthrough();
  }
  CLI11_PARSE(app, argc, argv);
  max_len = clamp_len(max_len);

  auto emit_automaton = [&](const WeightedOpa& a) {
    Json j = wopa_to_json(a);
    if (out_path.empty()) {
      std::cout << j.dump(2) << "\n";
    } else {
      save_json_file(out_path, j);
    }
  };

  if (*chains_cmd) {
    OpAlphabet alpha = alphabet_from_json(load_json_file(opm_path));
    for (const Word& w : words_from(word_arg, words_file)) {
      auto cs = chains(alpha, w);
      std::string line;
      Json pairs = Json::array();
      for (auto [i, j] : cs) {
        if (!line.empty()) line += ' ';
        line += "(" + std::to_string(i) + "," + std::to_string(j) + ")";
        pairs.push_back(Json::array({i, j}));
      }
      out.ok_line(line, Json{{"word", word_str(w)}, {"chains", pairs}});
    }
  } else if (*compat_cmd) {
    OpAlphabet alpha = alphabet_from_json(load_json_file(opm_path));
    for (const Word& w : words_from(word_arg, words_file)) {
      bool ok = is_compatible(alpha, w);
      out.ok_line(ok ? "compatible" : "incompatible",
                  Json{{"word", word_str(w)}, {"compatible", ok}});
    }
  } else if (*accepts_cmd) {
    OpAlphabet alpha = alphabet_from_json(load_json_file(opm_path));
    Opa a = opa_from_json(load_json_file(aut_path));
    a.validate(alpha);
    for (const Word& w : words_from(word_arg, words_file)) {
      bool ok = accepts(alpha, a, w);
      out.ok_line(ok ? "accept" : "reject",
                  Json{{"word", word_str(w)}, {"accept", ok}});
    }
  } else if (*runs_cmd) {
    OpAlphabet alpha = alphabet_from_json(load_json_file(opm_path));
    Json in = load_json_file(aut_path);
    Opa a = in.contains("weights") ? wopa_from_json(in).base() : opa_from_json(in);
    a.validate(alpha);
    for (const Word& w : words_from(word_arg, words_file)) {
      auto runs = enumerate_runs(alpha, a, w);
      Json lines = Json::array();
      std::string text = std::to_string(runs.size()) + " accepting run" +
                         (runs.size() == 1 ? "" : "s");
      for (const Run& r : runs) {
        text += "\n" + run_str(r);
        lines.push_back(run_str(r));
      }
      out.ok_line(text, Json{{"word", word_str(w)}, {"runs", lines}});
    }
  } else if (*eval_cmd) {
    OpAlphabet alpha = alphabet_from_json(load_json_file(opm_path));
    Json in = load_json_file(aut_path);
    WeightedOpa a =
        in.contains("weights")
            ? wopa_from_json(in)
            : lift_boolean(opa_from_json(in), Semiring::from_id(lift_semiring));
    a.validate(alpha);
    for (const Word& w : words_from(word_arg, words_file)) {
      Weight v = behavior(alpha, a, w);
      out.ok_line(
          a.semiring().format_weight(v),
          Json{{"word", word_str(w)}, {"weight", a.semiring().format_weight(v)}});
    }
  } else if (*sum_cmd) {
    emit_automaton(sum(wopa_from_json(load_json_file(aut_path)),
                       wopa_from_json(load_json_file(other_path))));
  } else if (*intersect_cmd) {
    emit_automaton(intersect_with_opl(wopa_from_json(load_json_file(aut_path)),
                                      opa_from_json(load_json_file(other_path))));
  } else if (*hadamard_cmd) {
    emit_automaton(hadamard(wopa_from_json(load_json_file(aut_path)),
                            wopa_from_json(load_json_file(other_path))));
  } else if (*project_cmd) {
    OpAlphabet source = alphabet_from_json(load_json_file(opm_path));
    OpAlphabet target = alphabet_from_json(load_json_file(target_opm_path));
    SymbolMap h;
    for (const auto& [key, value] : load_json_file(map_path).items()) {
      h[key] = value.get<std::string>();
    }
    emit_automaton(
        project(source, wopa_from_json(load_json_file(aut_path)), h, target));
  } else if (*scale_cmd) {
    WeightedOpa a = wopa_from_json(load_json_file(aut_path));
    emit_automaton(scalar_left_multiply(a.semiring().parse_weight(scalar), a));
  } else if (*unpop_cmd) {
    emit_automaton(eliminate_pop_weights(wopa_from_json(load_json_file(aut_path))));
  } else if (*from_nwa_cmd) {
    WeightedNwa n = nwa_from_json(load_json_file(aut_path));
    if (!emit_opm.empty()) {
      save_json_file(emit_opm, alphabet_to_json(vpl_opm(n.partition())));
    }
    emit_automaton(from_nwa(n));
  } else if (*nwa_eval_cmd) {
    WeightedNwa n = nwa_from_json(load_json_file(aut_path));
    for (const Word& w : words_from(word_arg, words_file)) {
      Weight v = nwa_behavior(n, w);
      out.ok_line(
          n.semiring().format_weight(v),
          Json{{"word", word_str(w)}, {"weight", n.semiring().format_weight(v)}});
    }
  } else if (*nivat_d_cmd) {
    OpAlphabet alpha = alphabet_from_json(load_json_file(opm_path));
    WeightedOpa a = wopa_from_json(load_json_file(aut_path));
    a.validate(alpha);
    NivatDecomposition d = nivat_decompose(alpha, a);
    std::filesystem::create_directories(out_path);
    save_json_file(out_path + "/alphabet.json", alphabet_to_json(d.extended));
    Json map = Json::object();
    for (const auto& [k, v] : d.h) map[k] = v;
    save_json_file(out_path + "/map.json", map);
    save_json_file(out_path + "/b.json", wopa_to_json(d.b));
    save_json_file(out_path + "/lang.json", opa_to_json(d.lang));
    out.ok_line("wrote " + out_path, Json{{"out", out_path}});
  } else if (*nivat_c_cmd) {
    OpAlphabet alpha = alphabet_from_json(load_json_file(opm_path));
    WeightedOpa a = wopa_from_json(load_json_file(aut_path));
    Json bundle;
    bundle["alphabet"] = load_json_file(bundle_path + "/alphabet.json");
    bundle["map"] = load_json_file(bundle_path + "/map.json");
    bundle["b"] = load_json_file(bundle_path + "/b.json");
    bundle["lang"] = load_json_file(bundle_path + "/lang.json");
    NivatDecomposition d = nivat_from_json(bundle);
    for (const Word& w : compatible_words(alpha, max_len)) {
      Weight lhs = nivat_eval(d, w);
      Weight rhs = behavior(alpha, a, w);
      if (!(lhs == rhs)) {
        out.ok_line("mismatch at \"" + word_str(w) + "\": " +
                        a.semiring().format_weight(lhs) + " vs " +
                        a.semiring().format_weight(rhs),
                    Json{{"equal", false}, {"word", word_str(w)}});
        return 1;
      }
    }
    out.ok_line("equal", Json{{"equal", true}, {"max_len", max_len}});
  } else if (*step_cmd) {
    OpAlphabet alpha = alphabet_from_json(load_json_file(opm_path));
    StepFunction s = step_from_json(load_json_file(aut_path));
    for (const Word& w : words_from(word_arg, words_file)) {
      Weight v = step_eval(s, alpha, w);
      out.ok_line(
          s.semiring().format_weight(v),
          Json{{"word", word_str(w)}, {"weight", s.semiring().format_weight(v)}});
    }
  } else if (*mso_eval_cmd) {
    OpAlphabet alpha = alphabet_from_json(load_json_file(opm_path));
    FormulaFile f = formula_from_json(load_json_file(aut_path));
    Assignment sigma;
    if (!assign_json.empty()) {
      Json j;
      try {
        j = Json::parse(assign_json);
      } catch (const nlohmann::json::exception& e) {
        throw ParseError("bad-file", std::string("invalid assignment: ") + e.what());
      }
      sigma = assignment_from_json(j);
    }
    EvalOptions opts;
    opts.budget_log2 = budget;
    for (const Word& w : words_from(word_arg, words_file)) {
      Weight v = mso_eval(alpha, f.semiring, f.formula, w, sigma, opts);
      out.ok_line(
          f.semiring.format_weight(v),
          Json{{"word", word_str(w)}, {"weight", f.semiring.format_weight(v)}});
    }
  } else if (*classify_cmd) {
    FormulaFile f = formula_from_json(load_json_file(aut_path));
    Classification c = classify(f.formula, f.semiring);
    Json consts = Json::array();
    for (const Weight& k : c.constants) consts.push_back(f.semiring.format_weight(k));
    Json j{{"boolean", c.is_boolean},
           {"almost_boolean", c.is_almost_boolean},
           {"otimes_restricted", c.is_otimes_restricted},
           {"prod_restricted", c.is_prod_restricted},
           {"restricted", c.is_restricted},
           {"constants", consts}};
    out.ok_line(j.dump(2), j);
  } else if (*to_mso_cmd) {
    OpAlphabet alpha = alphabet_from_json(load_json_file(opm_path));
    WeightedOpa a = wopa_from_json(load_json_file(aut_path));
    a.validate(alpha);
    Json j = formula_to_json(automaton_to_formula(alpha, a), a.semiring());
    if (out_path.empty()) {
      std::cout << j.dump(2) << "\n";
    } else {
      save_json_file(out_path, j);
    }
  } else if (*diff_cmd) {
    OpAlphabet alpha = alphabet_from_json(load_json_file(opm_path));
    Series lhs = Series::load(aut_path, lift_semiring);
    Series rhs = Series::load(other_path, lift_semiring);
    if (lhs.semiring_id() != rhs.semiring_id()) {
      throw PreconditionError("semiring-mismatch",
                              "series over different semirings: " +
                                  lhs.semiring_id() + " vs " + rhs.semiring_id());
    }
    Semiring sr = Semiring::from_id(lhs.semiring_id());
    int count = 0;
    for (const Word& w : compatible_words(alpha, max_len)) {
      Weight a = lhs.eval(alpha, w);
      Weight b = rhs.eval(alpha, w);
      ++count;
      if (!(a == b)) {
        out.ok_line("mismatch at \"" + word_str(w) + "\": " + sr.format_weight(a) +
                        " vs " + sr.format_weight(b),
                    Json{{"equal", false},
                         {"word", word_str(w)},
                         {"lhs", sr.format_weight(a)},
                         {"rhs", sr.format_weight(b)}});
        return 1;
      }
    }
    out.ok_line("equal", Json{{"equal", true}, {"words_checked", count}});
  } else if (*dot_cmd) {
    std::cout << dot_render(load_json_file(aut_path));
  }
  return 0;
}

void report(int argc, char** argv, const Error& e, int code) {
  bool json = false;
  for (int i = 1; i < argc; ++i) json |= std::string(argv[i]) == "--json";
  if (json) {
    Json j{{"status", "error"}, {"code", e.code()}, {"message", e.what()}};
    std::cout << j.dump() << "\n";
  } else {
    std::cerr << "error (" << e.code() << "): " << e.what() << "\n";
  }
  (void)code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    report(argc, argv, e, 2);
    return 2;
  } catch (const PreconditionError& e) {
    report(argc, argv, e, 3);
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
