#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with tensor, cotensor and quantum symmetric algebras of Hopf bimodules"};
  app.require_subcommand(1);

  qsym::cli::Options o;
  std::string out_path;
  std::size_t max_degree = 0, degree = 0, cap = 0;

  for (auto [name, help] : std::vector<std::pair<const char*, const char*>>{
           {"validate", "check the Hopf, bimodule and pairing axioms"},
           {"hilbert", "dimensions of S_n via the symmetrizer (and the Gram matrices when a pairing is given)"},
           {"relations", "basis of the relations in one degree"},
           {"gram", "Gram matrix of the pairing in one degree"},
           {"check", "pairing non-degeneracy, radical and self-duality checks plus the wedge fact"}}) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("spec", o.spec_path, "couple spec (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--max-degree", max_degree, "highest degree");
    sub->add_option("--degree", degree, "degree for relations and gram");
    sub->add_option("--out", out_path, "write the machine-readable report here");
    sub->add_option("--cap", cap, "resource cap on component dimensions");
    sub->add_flag("--parallel", o.parallel, "spread independent degrees over threads");
    sub->add_flag("--timing", o.timing, "record wall-clock times in the report");
  }

  CLI11_PARSE(app, argc, argv);
  auto* sub = app.get_subcommands().front();
  o.command = sub->get_name();
  if (sub->count("--max-degree")) o.max_degree = max_degree;
  if (sub->count("--degree")) o.degree = degree;
  if (sub->count("--cap")) o.cap = cap;

  auto outcome = qsym::cli::run(o);
  std::cout << outcome.table;
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "cannot write " << out_path << "\n";
      return qsym::cli::bad_input;
    }
    f << outcome.report.dump(2) << "\n";
  }
  return outcome.exit_code;
}
