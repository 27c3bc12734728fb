#include "iqcl/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "iqcl/nqubit_sim.hpp"
#include "iqcl/parser.hpp"
#include "iqcl/translation.hpp"

namespace iqcl::cli {

namespace {

class Report {
 public:
  explicit Report(bool kv) : kv_(kv) {}
  void add(const std::string& key, const std::string& value) { rows_.emplace_back(key, value); }
  void add(const std::string& key, const Rational& q) { add(key, to_string(q)); }
  void add(const std::string& key, double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    add(key, std::string(buf));
  }
  void add(const std::string& key, std::uint64_t n) { add(key, std::to_string(n)); }
  void add_model(const std::string& prefix, const ReducedModel& m) {
    for (const auto& [atom, p] : m.pairs()) {
      add(prefix + "." + atom + ".u", p.u);
      add(prefix + "." + atom + ".w", p.w);
    }
  }
  void write(std::ostream& out) const {
    for (const auto& [k, v] : rows_) out << k << (kv_ ? "=" : ": ") << v << '\n';
  }

 private:
  bool kv_;
  std::vector<std::pair<std::string, std::string>> rows_;
};

struct Common {
  std::string format = "plain";
  double tol = 1e-6;
  std::string grid = "1/32";
  std::uint64_t budget = 100000;
  std::uint64_t seed = 0;

  SearchOptions search() const {
    SearchOptions o;
    o.grid = to_double(parse_rational(grid));
    if (!(o.grid > 0 && o.grid <= 1)) throw CLI::ValidationError("--grid", "pitch must be in (0, 1]");
    o.tol = tol;
    o.budget = budget;
    o.seed = seed;
    return o;
  }
};

void add_search_flags(CLI::App* app, Common& c) {
  app->add_option("--grid", c.grid, "seed grid pitch, e.g. 1/32")->capture_default_str();
  app->add_option("--tol", c.tol, "search tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--budget", c.budget, "evaluation budget")->capture_default_str()->check(CLI::PositiveNumber);
  app->add_option("--seed", c.seed, "random seed")->capture_default_str();
}

void write_relevance(Report& r, const RelevanceResult& res, double tol) {
  r.add("status", to_string(res.status));
  r.add("value", res.value);
  if (res.exact) r.add("exact", *res.exact);
  if (res.status == SearchStatus::Feasible) {
    r.add("bracket.low", res.value);
    r.add("bracket.high", std::min(1.0, res.value + tol));
  }
  r.add("evaluations", res.evaluations);
  if (res.witness) {
    r.add("witness.value", *res.witness_value);
    r.add_model("witness", *res.witness);
  }
}

int sim_prop34(Report& r, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit;
  auto random_point = [&] {
    double x = gauss(rng), y = gauss(rng), z = gauss(rng);
    double n = std::sqrt(x * x + y * y + z * z), rad = std::cbrt(unit(rng));
    return BlochQmix(rad * x / n, rad * y / n, rad * z / n);
  };
  double worst = 0;
  for (int i = 0; i < trials; ++i) {
    BlochQmix tau = random_point(), nu = random_point();
    BlochQmix reduced = sim::bloch_extract(sim::partial_trace(sim::and_gate(sim::bloch_embed(tau), sim::bloch_embed(nu)), 1));
    BlochQmix expect = iand(tau, nu);
    worst = std::max({worst, std::abs(reduced.r1() - expect.r1()), std::abs(reduced.r2() - expect.r2()),
                      std::abs(reduced.r3() - expect.r3())});
  }
  r.add("trials", static_cast<std::uint64_t>(trials));
  r.add("max_deviation", worst);
  bool ok = worst < 1e-10;
  r.add("pass", std::string(ok ? "true" : "false"));
  return ok ? kOk : kRejected;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum computational logic toolkit: evaluation, relevance degrees, proofs, simulation"};
  app.require_subcommand(1);
  // subcommands inherit this, so global flags may follow them
  app.fallthrough();
  Common c;
  app.add_option("--format", c.format, "plain or kv")->check(CLI::IsMember({"plain", "kv"}))->capture_default_str();

  std::string formula_text, theory_path, model_path, proof_path, goal_text, alpha_text;
  std::vector<std::string> cert_paths;
  bool strict = false, sanity = false, as_theory = false;

  auto* fmt = app.add_subcommand("fmt", "parse and pretty-print a formula or theory file");
  fmt->add_option("input", formula_text, "formula, or a path with --theory")->required();
  fmt->add_flag("--theory", as_theory, "treat input as a theory file");

  auto* eval = app.add_subcommand("eval", "probability pair of a formula under a model file");
  eval->add_option("formula", formula_text)->required();
  eval->add_option("model", model_path)->required();

  auto* taut = app.add_subcommand("taut", "search for a counterexample; exit 1 if one is found");
  taut->add_option("formula", formula_text)->required();
  add_search_flags(taut, c);

  auto* rel = app.add_subcommand("relevance", "relevance degree of a formula under a theory file");
  rel->add_option("theory", theory_path)->required();
  rel->add_option("formula", formula_text)->required();
  add_search_flags(rel, c);

  auto* cons = app.add_subcommand("consistency", "look for a model of a theory file");
  cons->add_option("theory", theory_path)->required();
  add_search_flags(cons, c);

  auto* deg = app.add_subcommand("degree", "proof-degree report from certificate proofs");
  deg->add_option("theory", theory_path)->required();
  deg->add_option("formula", formula_text)->required();
  deg->add_option("certificates", cert_paths);
  add_search_flags(deg, c);

  auto* tr = app.add_subcommand("translate", "sqrt-to-atoms translation of a formula or theory file");
  tr->add_option("input", formula_text)->required();
  tr->add_flag("--theory", as_theory, "treat input as a theory file");

  std::vector<std::string> tq5_atoms, tq5_s, tq5_t5, tq5_alpha;
  auto* tq5 = app.add_subcommand("tq5", "emit the bounding theory as a theory file");
  tq5->add_option("--atoms", tq5_atoms, "atom names")->delimiter(',')->required();
  tq5->add_option("--s", tq5_s, "values above the square-root bound")->delimiter(',');
  tq5->add_option("--t5", tq5_t5, "values >= 3/8 for the 1/8 group")->delimiter(',');
  tq5->add_option("--alpha", tq5_alpha, "formulas for the 1/8 group (default: atoms and their roots)");

  auto* proof = app.add_subcommand("proof", "proof tools");
  proof->require_subcommand(1);
  auto* check = proof->add_subcommand("check", "check a proof file against a theory file and goal");
  check->add_option("theory", theory_path)->required();
  check->add_option("proof", proof_path)->required();
  check->add_option("goal", goal_text)->required();
  check->add_flag("--strict", strict, "reject lemma justifications");
  check->add_flag("--sanity", sanity, "re-evaluate every step under sampled models");
  auto* deduce = proof->add_subcommand("deduce", "discharge a hypothesis from a proof");
  deduce->add_option("theory", theory_path)->required();
  deduce->add_option("alpha", alpha_text)->required();
  deduce->add_option("proof", proof_path, "proof from the theory plus alpha (alpha is the last member)")->required();
  auto* support = proof->add_subcommand("support", "theory members a proof actually uses");
  support->add_option("theory", theory_path)->required();
  support->add_option("proof", proof_path)->required();

  auto* sim_cmd = app.add_subcommand("sim", "density-matrix simulator");
  sim_cmd->require_subcommand(1);
  int trials = 100;
  std::uint64_t shots = 0;
  auto* p34 = sim_cmd->add_subcommand("prop34", "compare the partial trace of AND with IAND on random pairs");
  p34->add_option("--trials", trials)->capture_default_str()->check(CLI::PositiveNumber);
  p34->add_option("--seed", c.seed)->capture_default_str();
  std::string gate_name;
  std::vector<std::string> operands;
  auto* gate = sim_cmd->add_subcommand("gate", "apply a gate to qmix literals '(r1, r2, r3)' or 'rho(l)'");
  gate->add_option("name", gate_name)
      ->required()
      ->check(CLI::IsMember({"not", "sqrtnot", "and", "iand", "oplus", "odot", "implies", "meet", "join", "id"}));
  gate->add_option("operands", operands)->required();
  gate->add_option("--shots", shots, "sample the output measurement");
  gate->add_option("--seed", c.seed)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  Report r(c.format == "kv");
  int code = kOk;
  try {
    if (*fmt) {
      if (as_theory) out << print_theory(load_theory(formula_text));
      else out << print_formula(parse_formula(formula_text)) << '\n';
      return kOk;
    }
    if (*eval) {
      Formula f = parse_formula(formula_text);
      ProbPair p = eval_prob(load_model(model_path), f);
      r.add("u", p.u);
      r.add("w", p.w);
    } else if (*taut) {
      TautologyVerdict v = check_tautology(parse_formula(formula_text), c.search());
      r.add("verdict", std::string(v.tautology ? "no-counterexample" : "counterexample"));
      r.add("min_found", v.min_found);
      if (v.counterexample) {
        r.add("counterexample.value", *v.counterexample_value);
        r.add_model("counterexample", *v.counterexample);
        code = kRejected;
      }
    } else if (*rel) {
      Theory t = load_theory(theory_path);
      SearchOptions o = c.search();
      write_relevance(r, relevance_degree(t, parse_formula(formula_text), o), o.tol);
    } else if (*cons) {
      ConsistencyResult res = consistency_probe(load_theory(theory_path), c.search());
      r.add("result", std::string(res.model_found ? "model-found" : "no-model-at-budget"));
      if (res.model) r.add_model("model", *res.model);
      code = res.model_found ? kOk : kRejected;
    } else if (*deg) {
      Theory t = load_theory(theory_path);
      std::vector<Proof> certs;
      for (const auto& p : cert_paths) certs.push_back(load_proof(p));
      SearchOptions o = c.search();
      ProofDegreeReport rep = proof_degree(t, parse_formula(formula_text), certs, o);
      r.add("lower_bound", rep.lower_bound);
      for (std::size_t i = 0; i < rep.certified.size(); ++i) r.add("certificate." + std::to_string(i + 1), rep.certified[i]);
      write_relevance(r, rep.numeric, o.tol);
      r.add("defect", std::string(rep.defect ? "true" : "false"));
      code = rep.defect ? kRejected : kOk;
    } else if (*tr) {
      if (as_theory) out << print_theory(translate_theory(load_theory(formula_text)));
      else out << print_formula(pmv_translate(parse_formula(formula_text))) << '\n';
      return kOk;
    } else if (*tq5) {
      Tq5Config cfg;
      cfg.atoms = tq5_atoms;
      for (const auto& s : tq5_s) cfg.bound_values.push_back(SConstant::from_rational(parse_rational(s)));
      for (const auto& s : tq5_t5) cfg.t5_values.push_back(SConstant::from_rational(parse_rational(s)));
      if (tq5_s.empty()) cfg.bound_values = {least_dyadic_above_q5_bound(8)};
      if (tq5_t5.empty()) cfg.t5_values = {SConstant(3, 3)};
      if (tq5_alpha.empty())
        for (const auto& a : tq5_atoms) {
          cfg.t5_formulas.push_back(Formula::atom(a));
          cfg.t5_formulas.push_back(Formula::sqrt(Formula::atom(a)));
        }
      for (const auto& a : tq5_alpha) cfg.t5_formulas.push_back(parse_formula(a));
      out << print_theory(generate_tq5(cfg));
      return kOk;
    } else if (*check) {
      CheckOptions opt;
      opt.allow_lemmas = !strict;
      opt.semantic_sanity = sanity;
      CheckResult res = check_proof(load_theory(theory_path), load_proof(proof_path), parse_formula(goal_text), opt);
      r.add("result", std::string(res ? "ok" : "rejected"));
      if (!res) {
        r.add("step", static_cast<std::uint64_t>(res.step));
        r.add("error", to_string(res.error));
        r.add("reason", res.reason);
        code = kRejected;
      }
    } else if (*deduce) {
      DeductionResult d = deduction_transform(load_theory(theory_path), parse_formula(alpha_text), load_proof(proof_path));
      out << "# n = " << d.n << '\n' << print_proof(d.proof);
      return kOk;
    } else if (*support) {
      Support s = finite_support(load_theory(theory_path), load_proof(proof_path));
      out << "# support\n" << print_theory(s.theory);
      return kOk;
    } else if (*p34) {
      code = sim_prop34(r, trials, c.seed);
    } else if (*gate) {
      std::vector<BlochQmix> qs;
      for (const auto& o : operands) qs.push_back(parse_qmix(o));
      const bool unary = gate_name == "not" || gate_name == "sqrtnot" || gate_name == "id";
      if (qs.size() != (unary ? 1u : 2u)) {
        err << "error: gate '" << gate_name << "' takes " << (unary ? 1 : 2) << " operand(s)\n";
        return kUsage;
      }
      BlochQmix result;
      sim::DensityMatrix state = sim::bloch_embed(qs[0]);
      if (gate_name == "not") result = gate_not(qs[0]);
      else if (gate_name == "sqrtnot") result = gate_sqrt_not(qs[0]);
      else if (gate_name == "id") result = qs[0];
      else if (gate_name == "and") {
        state = sim::and_gate(sim::bloch_embed(qs[0]), sim::bloch_embed(qs[1]));
        result = sim::bloch_extract(sim::partial_trace(state, 1));
      } else if (gate_name == "iand") result = iand(qs[0], qs[1]);
      else if (gate_name == "oplus") result = luk_oplus(qs[0], qs[1]);
      else if (gate_name == "odot") result = q_odot(qs[0], qs[1]);
      else if (gate_name == "implies") result = q_implies(qs[0], qs[1]);
      else if (gate_name == "meet") result = q_meet(qs[0], qs[1]);
      else result = q_join(qs[0], qs[1]);
      if (gate_name != "and") state = sim::bloch_embed(result);
      r.add("prob", sim::prob_n(state));
      r.add("r1", result.r1());
      r.add("r2", result.r2());
      r.add("r3", result.r3());
      if (shots > 0) {
        r.add("shots", shots);
        r.add("ones", sim::sample_measurements(state, shots, c.seed));
      }
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  r.write(out);
  return code;
}

}  // namespace iqcl::cli
