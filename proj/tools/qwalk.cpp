#include <CLI11.hpp>
#include <iostream>

#include "qwalk/cli.hpp"
#include "qwalk/errors.hpp"

int main(int argc, char** argv) {
  using namespace qwalk;
  CLI::App app{"Asymptotic expansions for lattice walks in the quarter plane and orthants"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string start, format = "human";
  std::vector<std::string> ends;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("model", cfg.model_path, "model file")->required();
    sub->add_option("--format", format, "human, structured or csv")->check(CLI::IsMember({"human", "structured", "json", "csv"}));
    sub->add_option("--out", cfg.out, "write the report to this file");
    sub->add_option("--start", start, "start point, e.g. 1,1");
  };
  auto analyze = app.add_subcommand("analyze", "model, group and saddle diagnostics");
  add_common(analyze);
  analyze->add_option("--depth", cfg.depth, "certificate depth");
  analyze->add_option("--numerator", cfg.numerator_path, "numerator file");

  auto expand = app.add_subcommand("expand", "asymptotic expansion terms v_p");
  add_common(expand);
  expand->add_option("--order", cfg.order, "number of terms");
  expand->add_option("--numerator", cfg.numerator_path, "numerator file");
  expand->add_option("--depth", cfg.depth, "certificate depth");
  expand->add_flag("--symbolic", cfg.symbolic, "v_p as polynomials in the start point too");
  expand->add_flag("--shifted", cfg.shifted, "report in coordinates shifted by one");

  auto verify = app.add_subcommand("verify", "compare the expansion with exact counts");
  add_common(verify);
  verify->add_option("--order", cfg.order, "number of terms");
  verify->add_option("--numerator", cfg.numerator_path, "numerator file");
  verify->add_option("--expansion", cfg.expansion_path, "structured expansion report to verify");
  verify->add_option("--depth", cfg.depth, "certificate depth");
  verify->add_option("--end", ends, "endpoint, repeatable");
  verify->add_option("--nmin", cfg.nmin, "smallest length");
  verify->add_option("--nmax", cfg.nmax, "largest length");
  verify->add_option("--precision", cfg.precision, "working precision in bits");
  verify->add_option("--window", cfg.window, "also check polyharmonicity on [0,window]^2");
  verify->add_option("--rel-tol", cfg.rel_tol, "relative error bound at the largest length");
  verify->add_option("--slope-tol", cfg.slope_tol, "allowed deviation of the remainder slope");

  auto decompose = app.add_subcommand("decompose", "split v_p into polyharmonic products");
  add_common(decompose);
  decompose->add_option("--order", cfg.order, "largest p");
  decompose->add_option("--basis", cfg.basis_prefix, "basis files <prefix>_<n>_<m>.poly");
  decompose->add_option("--adjoint-basis", cfg.adjoint_basis_prefix, "adjoint basis files");
  decompose->add_flag("--shifted", cfg.shifted, "work in coordinates shifted by one");

  auto count = app.add_subcommand("count", "exact weighted path count");
  add_common(count);
  count->add_option("--end", ends, "endpoint");
  count->add_option("--nmax", cfg.nmax, "path length");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ErrorCode::InvalidArgument);
  }
  try {
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.format = parse_format(format);
    if (!start.empty()) cfg.start = parse_point(start);
    for (auto& e : ends) cfg.ends.push_back(parse_point(e));
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.exit_code();
  }
  auto r = run_command(cfg);
  (r.exit_code == 0 || r.exit_code == 1 ? std::cout : std::cerr) << r.output;
  return r.exit_code;
}
