#include <CLI11.hpp>

#include <iostream>

#include "ratmin/problem_io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Certified upper bounds for sums of rational functions on the box and sphere"};

  ratmin::RunConfig cfg;
  std::string method = "push";
  std::string s_rule = "d";
  std::string coeff = "exact";

  app.add_option("--problem", cfg.problem_path, "problem JSON file");
  app.add_option("--generate", cfg.generate, "built-in generator: example1 | rayleigh | sum");
  app.add_option("--n", cfg.n, "dimension for generators");
  app.add_option("--N", cfg.N, "fraction count for the sum generator");
  app.add_option("--seed", cfg.seed, "generator seed");
  app.add_option("--mc-samples", cfg.mc_samples,
                 "samples for the generator shift (default 1e6)");
  app.add_option("--method", method,
                 "std | push | std-sum | push-sum | poly | poly-push");
  app.add_option("--dmin", cfg.dmin, "first order");
  app.add_option("--dmax", cfg.dmax, "last order");
  app.add_option("--s", s_rule, "multiplier degree: an integer, or 'd' to match the order");
  app.add_flag("--oracle-check", cfg.oracle_check,
               "cross-check bounds against a brute-force scan");
  app.add_option("--coeff", coeff, "exact | float coefficient arithmetic");
  app.add_option("--out", cfg.out_path, "CSV output path (default stdout)");
  app.add_option("--cache-moments", cfg.cache_dir, "directory for persistent moment tables");
  app.add_option("--export-sdpa", cfg.export_sdpa_path,
                 "write the order-dmax sum problem in sparse SDPA text form");
  app.add_flag("--pfm-u1-form", cfg.pfm_u1_form,
               "use the u1 multiplier weight in the pushforward sum program");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.method = ratmin::parse_method(method);
    if (s_rule != "d") cfg.s_fixed = std::stoi(s_rule);
    if (coeff == "exact")
      cfg.coeff = ratmin::CoeffMode::Exact;
    else if (coeff == "float")
      cfg.coeff = ratmin::CoeffMode::Float;
    else
      throw std::invalid_argument("--coeff must be exact or float");

    ratmin::RunOutcome outcome = ratmin::execute_run(cfg, std::cerr);
    if (!outcome.oracle_check_passed) return 2;
    for (const auto& r : outcome.results)
      if (r.status.rfind("error", 0) == 0) return 3;
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
