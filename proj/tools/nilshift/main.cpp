#include <iostream>

#include "CLI11.hpp"
#include "app.hpp"

using namespace nilshift::app;

namespace {

void space_options(CLI::App* s, RunConfig& c) {
  s->add_option("--space", c.space, "Catalog space (point, CP1, CP2, CP1xCP1, CP3, CP4, Bl1, Bl2, Bl3)");
  s->add_option("--fan", c.fan, "Fan file; overrides --space");
  s->add_option("--group", c.group, "T or SU2");
  s->add_option("--rank", c.rank, "Rank of a torus acting trivially on the point");
  s->add_option("--widen", c.widen, "Extra q-powers in the solver ansatz");
  s->add_option("--solve-budget", c.solve_budget, "Maximum solver equation rows");
  s->add_option("--budget", c.budget, "Groebner step budget");
  s->add_option("--seed", c.seed, "Seed for randomized checks");
  s->add_option("--fault", c.fault, "Inject a named fault");
  s->add_option("--out", c.out, "Write the report here instead of stdout");
}

int emit(const Outcome& o, const std::string& out) {
  std::string text = render(o.report);
  if (out.empty()) {
    std::cout << text;
  } else {
    write_atomic(out, text);
    std::cout << (o.exit_code == kPass ? "pass" : "fail") << " (exit " << o.exit_code << "): " << out << "\n";
  }
  return o.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for affine nil-Hecke algebras, shift operators and BFM supports"};
  app.require_subcommand(1);
  RunConfig c;
  std::string diff_a, diff_b, diff_out;

  auto* alg = app.add_subcommand("algebra", "Nil-Hecke relation suite");
  alg->add_option("--group", c.group, "Root datum: S1, T2, SU2, SU3, products like T1xSU2")->required();
  alg->add_option("--seed", c.seed, "Seed for random samples");
  alg->add_option("--samples", c.samples, "Associativity triples (spherical pairs use half)");
  alg->add_option("--out", c.out, "Write the report here instead of stdout");

  auto* sh = app.add_subcommand("shift", "Solve and validate shift operators");
  space_options(sh, c);
  sh->add_option("--max-word", c.max_word, "Longest generator word in the module-law check");
  sh->add_option("--radius", c.radius, "Peterson lattice radius");
  sh->add_option("--datum-out", c.datum_out, "Write the solved datum");

  auto* pe = app.add_subcommand("peterson", "Peterson homomorphism and Batyrev images");
  space_options(pe, c);
  pe->add_option("--radius", c.radius, "Lattice radius");
  pe->add_option("--datum", c.datum_in, "Load a datum instead of solving");

  auto* la = app.add_subcommand("lagrangian", "Support ideal and Lagrangian certificate");
  space_options(la, c);
  la->add_option("--datum", c.datum_in, "Load a datum instead of solving");

  auto* rep = app.add_subcommand("report", "Report utilities");
  rep->require_subcommand(1);
  auto* diff = rep->add_subcommand("diff", "Compare two reports byte for byte");
  diff->add_option("a", diff_a)->required();
  diff->add_option("b", diff_b)->required();
  diff->add_option("--out", diff_out, "Write the comparison here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kConfigError;
  }

  try {
    if (diff->parsed()) return emit(report_diff(diff_a, diff_b), diff_out);
    for (auto* s : {alg, sh, pe, la}) {
      if (s->parsed()) c.command = s->get_name();
    }
    return emit(run(c), c.out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
}
