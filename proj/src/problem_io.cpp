#include "ratmin/problem_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ratmin/brute.hpp"
#include "ratmin/sdp_build.hpp"

namespace ratmin {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& origin, const std::string& text,
                             std::size_t byte, const std::string& what) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  std::ostringstream os;
  os << origin << ":" << line << ":" << col << ": " << what;
  throw std::runtime_error(os.str());
}

PolyQ poly_from_json(const json& terms, int n, const std::string& origin) {
  if (!terms.is_array()) throw std::runtime_error(origin + ": polynomial must be a term list");
  PolyQ p(n);
  for (const auto& t : terms) {
    if (!t.contains("coef") || !t.contains("exps"))
      throw std::runtime_error(origin + ": term needs coef and exps");
    Rational c;
    if (t["coef"].is_string())
      c = rat_parse(t["coef"].get<std::string>());
    else if (t["coef"].is_number())
      c = rat_from_double(t["coef"].get<double>());
    else
      throw std::runtime_error(origin + ": coef must be a string rational or a number");
    const auto& ex = t["exps"];
    if (!ex.is_array() || int(ex.size()) != n)
      throw std::runtime_error(origin + ": exps length must equal n");
    Mono m(n);
    for (int i = 0; i < n; ++i) {
      int e = ex[std::size_t(i)].get<int>();
      if (e < 0 || e > 0xFFFF) throw std::runtime_error(origin + ": exponent out of range");
      m.e[std::size_t(i)] = std::uint16_t(e);
    }
    p.add_term(m, c);
  }
  return p;
}

}  // namespace

Problem parse_problem_text(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(origin, text, e.byte, e.what());
  }
  if (!doc.contains("n") || !doc.contains("fractions"))
    throw std::runtime_error(origin + ": document needs fields n and fractions");
  Problem prob;
  prob.n = doc["n"].get<int>();
  std::string set = doc.value("set", std::string("box"));
  if (set == "box")
    prob.set = SetKind::Box;
  else if (set == "sphere")
    prob.set = SetKind::Sphere;
  else
    throw std::runtime_error(origin + ": set must be \"box\" or \"sphere\"");
  for (const auto& fr : doc["fractions"]) {
    if (!fr.contains("num") || !fr.contains("den"))
      throw std::runtime_error(origin + ": fraction needs num and den");
    prob.fractions.push_back(
        {poly_from_json(fr["num"], prob.n, origin), poly_from_json(fr["den"], prob.n, origin)});
  }
  if (doc.contains("known_min")) prob.known_min = doc["known_min"].get<double>();
  prob.provenance = doc.value("provenance", std::string());
  prob.validate();
  return prob;
}

Problem parse_problem(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open problem file " + path);
  std::stringstream buf;
  buf << is.rdbuf();
  return parse_problem_text(buf.str(), path);
}

namespace {

json poly_to_json(const PolyQ& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.sorted_terms()) {
    json t;
    t["coef"] = rat_str(c);
    t["exps"] = json::array();
    for (auto e : m.e) t["exps"].push_back(int(e));
    terms.push_back(t);
  }
  return terms;
}

}  // namespace

std::string emit_problem(const Problem& problem) {
  json doc;
  doc["n"] = problem.n;
  doc["set"] = set_name(problem.set);
  doc["fractions"] = json::array();
  for (const auto& fr : problem.fractions) {
    json f;
    f["num"] = poly_to_json(fr.num);
    f["den"] = poly_to_json(fr.den);
    doc["fractions"].push_back(f);
  }
  if (problem.known_min) doc["known_min"] = *problem.known_min;
  if (!problem.provenance.empty()) doc["provenance"] = problem.provenance;
  return doc.dump(2) + "\n";
}

Problem gen_example1(int n) {
  if (n < 2) throw std::invalid_argument("example1 needs n >= 2");
  PolyQ f(n), g(n);
  Mono prod(n);
  for (int i = 0; i < n; ++i) {
    Mono m(n);
    m.e[std::size_t(i)] = std::uint16_t(2 * n);
    f.add_term(m, Rational(1));
    prod.e[std::size_t(i)] = 2;
  }
  g.add_term(prod, Rational(1));
  Problem prob;
  prob.n = n;
  prob.set = SetKind::Box;
  prob.fractions.push_back({std::move(f), std::move(g)});
  prob.known_min = double(n);
  prob.provenance = "example1(n=" + std::to_string(n) + ")";
  return prob;
}

namespace {

// x'Mx expanded: diagonal terms plus doubled off-diagonal terms.
PolyQ quadratic_form(int n, const std::vector<std::vector<double>>& M) {
  PolyQ p(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Mono m(n);
      m.e[std::size_t(i)] += 1;
      m.e[std::size_t(j)] += 1;
      double c = (i == j) ? M[std::size_t(i)][std::size_t(j)]
                          : 2.0 * M[std::size_t(i)][std::size_t(j)];
      p.add_term(m, rat_from_double(c));
    }
  return p;
}

// Uniform symmetric matrix: upper triangle sampled row-major, mirrored.
std::vector<std::vector<double>> random_symmetric(int n, Rng& rng) {
  std::vector<std::vector<double>> M(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      M[std::size_t(i)][std::size_t(j)] = M[std::size_t(j)][std::size_t(i)] = rng.sym();
  return M;
}

// Full matrix sampled row-major, symmetrized, then shifted to make the
// smallest eigenvalue at least 1e-3.
std::vector<std::vector<double>> random_posdef(int n, Rng& rng, double& shift_out) {
  std::vector<std::vector<double>> M(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M[std::size_t(i)][std::size_t(j)] = rng.sym();
  SymMatrix S(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      S.at(i, j) = 0.5 * (M[std::size_t(i)][std::size_t(j)] + M[std::size_t(j)][std::size_t(i)]);
  double lmin = sym_eig(S).front();
  double delta = std::max(0.0, 1e-3 - lmin);
  shift_out = delta;
  std::vector<std::vector<double>> B(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B[std::size_t(i)][std::size_t(j)] = S.at(i, j) + (i == j ? delta : 0.0);
  return B;
}

}  // namespace

Problem gen_random_rayleigh(int n, std::uint64_t seed, std::uint64_t mc_samples) {
  if (n < 2) throw std::invalid_argument("rayleigh generator needs n >= 2");
  Rng rng(seed);
  auto A = random_symmetric(n, rng);
  double shift = 0.0;
  auto B = random_posdef(n, rng, shift);
  PolyQ fhat = quadratic_form(n, A);
  PolyQ g = quadratic_form(n, B);

  Problem raw;
  raw.n = n;
  raw.set = SetKind::Box;
  raw.fractions.push_back({fhat, g});
  double rho_hat = monte_carlo_min(raw, mc_samples, seed);

  Problem prob;
  prob.n = n;
  prob.set = SetKind::Box;
  prob.fractions.push_back({fhat - g.scaled(rat_from_double(rho_hat)), g});
  prob.rho_hat = rho_hat;
  std::ostringstream prov;
  prov << "rayleigh(n=" << n << ",seed=" << seed << ",mc=" << mc_samples
       << ",bshift=" << shift << ",rho_hat=" << rho_hat << ")";
  prob.provenance = prov.str();
  return prob;
}

Problem gen_random_sum(int N, int n, std::uint64_t seed, std::uint64_t mc_samples) {
  if (N < 1) throw std::invalid_argument("sum generator needs N >= 1");
  if (n < 2) throw std::invalid_argument("sum generator needs n >= 2");
  Rng rng(seed);
  Problem raw;
  raw.n = n;
  raw.set = SetKind::Box;
  std::ostringstream prov;
  prov << "sum(N=" << N << ",n=" << n << ",seed=" << seed << ",mc=" << mc_samples;
  for (int i = 0; i < N; ++i) {
    auto A = random_symmetric(n, rng);
    double shift = 0.0;
    auto B = random_posdef(n, rng, shift);
    PolyQ fhat = quadratic_form(n, A);
    PolyQ g = quadratic_form(n, B) + PolyQ::constant(n, Rational(1));
    raw.fractions.push_back({std::move(fhat), std::move(g)});
    prov << ",bshift" << (i + 1) << "=" << shift;
  }
  double rho_hat = monte_carlo_min(raw, mc_samples, seed);
  Problem prob = raw;
  prob.fractions[0].num =
      raw.fractions[0].num - raw.fractions[0].den.scaled(rat_from_double(rho_hat));
  prob.rho_hat = rho_hat;
  prov << ",rho_hat=" << rho_hat << ")";
  prob.provenance = prov.str();
  return prob;
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%#.6g", v);
  return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void emit_table(const std::vector<HierarchyResult>& results, std::ostream& os,
                const std::string& metadata) {
  if (results.empty()) throw std::invalid_argument("no results to emit");
  if (!metadata.empty()) {
    std::istringstream ms(metadata);
    std::string line;
    while (std::getline(ms, line)) os << "# " << line << "\n";
  }
  os << "method,N,n,d,s,value,moment_time_s,solve_time_s,status,certified\n";
  char tbuf[32];
  for (const auto& r : results) {
    os << r.method << "," << r.N << "," << r.n << "," << r.d << ",";
    if (r.s >= 0)
      os << r.s;
    else
      os << "-";
    os << "," << (r.unbounded ? "inf" : format_value(r.bound)) << ",";
    std::snprintf(tbuf, sizeof(tbuf), "%.2f", r.moment_seconds);
    os << tbuf << ",";
    std::snprintf(tbuf, sizeof(tbuf), "%.2f", r.solve_seconds);
    os << tbuf << ",";
    os << csv_escape(r.status) << "," << (r.certified ? "true" : "false") << "\n";
  }
}

void emit_table_file(const std::vector<HierarchyResult>& results, const std::string& path,
                     const std::string& metadata) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  emit_table(results, os, metadata);
}

void RunConfig::validate() const {
  if (problem_path.empty() == generate.empty())
    throw std::invalid_argument("give exactly one of --problem and --generate");
  if (!generate.empty() && generate != "example1" && generate != "rayleigh" && generate != "sum")
    throw std::invalid_argument("unknown generator: " + generate);
  if (dmin < 0 || dmax < dmin) throw std::invalid_argument("need 0 <= dmin <= dmax");
  if (s_fixed && *s_fixed < 0) throw std::invalid_argument("s must be nonnegative");
}

Problem load_or_generate(const RunConfig& cfg) {
  if (!cfg.problem_path.empty()) return parse_problem(cfg.problem_path);
  if (cfg.generate == "example1") return gen_example1(cfg.n);
  if (cfg.generate == "rayleigh") return gen_random_rayleigh(cfg.n, cfg.seed, cfg.mc_samples);
  return gen_random_sum(cfg.N, cfg.n, cfg.seed, cfg.mc_samples);
}

RunOutcome execute_run(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  RunOutcome outcome;
  Problem problem = load_or_generate(cfg);

  outcome.warnings = denominator_warnings(problem);
  for (const auto& w : outcome.warnings) log << "warning: " << w << "\n";

  // Method/fraction compatibility is part of the run contract.
  if (!is_sum_method(cfg.method) && problem.nfractions() != 1)
    throw std::invalid_argument("method " + method_name(cfg.method) +
                                " needs a single fraction; use a sum method");

  HierarchyOptions opts;
  opts.coeff = cfg.coeff;
  opts.pfm_u1_form = cfg.pfm_u1_form;
  opts.cache_dir = cfg.cache_dir;

  SweepSpec spec{cfg.method, cfg.dmin, cfg.dmax, cfg.s_fixed};
  outcome.results = run_sweep(problem, spec, opts);

  std::ostringstream meta;
  meta << "problem: " << (problem.provenance.empty() ? "file:" + cfg.problem_path
                                                     : problem.provenance)
       << "\n";
  meta << "set: " << set_name(problem.set) << "  coeff: "
       << (cfg.coeff == CoeffMode::Exact ? "exact" : "float");
  if (problem.rho_hat) meta << "  rho_hat: " << *problem.rho_hat;
  if (problem.known_min) meta << "  known_min: " << *problem.known_min;

  if (cfg.out_path.empty())
    emit_table(outcome.results, std::cout, meta.str());
  else
    emit_table_file(outcome.results, cfg.out_path, meta.str());

  if (!cfg.export_sdpa_path.empty()) {
    if (!is_sum_method(cfg.method))
      throw std::invalid_argument("--export-sdpa applies to the sum methods");
    MomentOracle oracle = MomentOracle::for_set(problem.set, problem.n);
    int s = cfg.s_fixed.value_or(cfg.dmax);
    SdpProblem p;
    if (cfg.method == Method::StdSum) {
      p = build_sum_standard(problem.fractions, oracle, cfg.dmax, s);
    } else {
      MomentTable table =
          pushforward_table_multi(problem.fractions, 2 * cfg.dmax + s + 1, oracle);
      if (opts.normalize_table) table = table.normalized();
      p = build_sum_pushforward(problem.nfractions(), table, cfg.dmax, s, cfg.pfm_u1_form);
    }
    std::ofstream os(cfg.export_sdpa_path);
    if (!os) throw std::runtime_error("cannot open " + cfg.export_sdpa_path);
    export_sdpa(p, os);
    log << "exported order-" << cfg.dmax << " problem to " << cfg.export_sdpa_path << "\n";
  }

  if (cfg.oracle_check) {
    double reference = std::numeric_limits<double>::quiet_NaN();
    std::string kind;
    if (problem.set == SetKind::Box && problem.n <= 3) {
      reference = grid_min(problem, 201);
      kind = "grid(201)";
    } else {
      reference = monte_carlo_min(problem, 100000, cfg.seed);
      kind = "monte-carlo(1e5)";
    }
    double slack = 0.05 * (1.0 + std::abs(reference));
    for (const auto& r : outcome.results) {
      if (r.status != "optimal") continue;
      bool ok = r.unbounded || r.bound >= reference - slack;
      if (!ok) outcome.oracle_check_passed = false;
      log << "[oracle-check] " << r.method << " d=" << r.d << " bound=" << r.bound
          << " vs " << kind << "=" << reference << (ok ? " ok" : " VIOLATED") << "\n";
    }
  }
  return outcome;
}

}  // namespace ratmin
