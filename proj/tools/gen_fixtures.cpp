// Regenerates the JSON fixture files from the built-in fixtures.
// Usage: gen_fixtures <output-dir>

#include <iostream>

#include "wop/fixtures.hpp"
#include "wop/io.hpp"

using namespace wop;
namespace fx = wop::fixtures;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gen_fixtures <output-dir>\n";
    return 2;
  }
  std::string dir = argv[1];
  auto put = [&](const std::string& name, const Json& j) {
    save_json_file(dir + "/" + name, j);
  };
  put("expr.opm.json", alphabet_to_json(fx::expr_opm()));
  put("expr.opa.json", opa_to_json(fx::expr_opa()));
  put("penalty.opm.json", alphabet_to_json(fx::penalty_opm()));
  put("penalty.wopa.json", wopa_to_json(fx::penalty()));
  put("policy.opm.json", alphabet_to_json(fx::policy_opm()));
  put("policy.wopa.json", wopa_to_json(fx::policy()));
  put("log.wopa.json", wopa_to_json(fx::log_automaton()));
  put("separation.opm.json", alphabet_to_json(fx::separation_opm()));
  put("separation.wopa.json", wopa_to_json(fx::separation()));
  put("single_push.opm.json", alphabet_to_json(fx::single_push_opm()));
  put("single_push.wopa.json", wopa_to_json(fx::single_push()));
  put("vpl.opm.json", alphabet_to_json(vpl_opm(fx::car_partition())));
  put("example.nwa.json", nwa_to_json(fx::example_nwa()));
  put("policy_chi.mso.json", formula_to_json(fx::policy_chi(), Semiring::max_plus()));
  return 0;
}
