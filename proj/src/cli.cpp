#include "qsearch/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qsearch/algorithms.hpp"
#include "qsearch/errors.hpp"
#include "qsearch/suite.hpp"
#include "qsearch/trace_io.hpp"

namespace qsearch {

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16g", x);
  return buf;
}

std::string coefficient_fraction(int t, int u) {
  const int log2t = int(std::lround(std::log2(double(t))));
  return "1/" + std::to_string(u * log2t);
}

// Writes a document to the named file, or to `out` when no path given.
bool emit(const std::string& doc, const std::string& path, std::ostream& out,
          std::ostream& err) {
  if (path.empty()) {
    out << doc;
    return true;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    err << "error: cannot open " << path << " for writing\n";
    return false;
  }
  f << doc;
  return true;
}

}  // namespace

int cmd_params(const ParamsOptions& opt, std::ostream& out,
               std::ostream& err) {
  try {
    const AdversaryParams p = derive_params(opt.q, opt.t, opt.u);
    out << "q = " << fmt(p.q) << "\n";
    out << "t = " << p.t << "\n";
    out << "u = " << p.u << "\n";
    out << "q' = 1/sqrt(t) + 2/(q-1) = " << fmt(p.q_prime) << "\n";
    out << "q * q'^u = " << fmt(p.q * std::pow(p.q_prime, p.u))
        << " (< 1, accepted)\n";
    out << "v = " << p.v << "\n";
    out << "query count coefficient = " << coefficient_fraction(p.t, p.u)
        << " = " << fmt(query_count_coefficient(p.t, p.u)) << "\n";
    return kExitOk;
  } catch (const config_error& e) {
    err << "rejected: " << e.what() << "\n";
    return kExitConfig;
  }
}

namespace {

int attack_full(const AttackOptions& opt, const QueryAlgorithm& alg,
                std::ostream& out, std::ostream& err) {
  const AdversaryParams params = derive_params(*opt.q, *opt.t, *opt.u);
  const TraceRegimeResult r =
      run_trace_regime(alg, params, opt.n, opt.v_override.value_or(0),
                       opt.success_threshold);
  const Verdict verdict =
      make_verdict(alg, r.hybrid.k_late, r.hybrid.k_early,
                   opt.success_threshold);

  std::string doc;
  if (opt.format == "json") {
    doc = trace_json(r.trace, r.hybrid, verdict);
  } else if (opt.format == "csv") {
    doc = trace_csv(r.trace);
  } else {
    throw config_error("unknown format '" + opt.format + "'");
  }
  if (!emit(doc, opt.out_path, out, err)) return kExitConfig;

  bool violated = false;
  if (!r.invariants.always_ok()) {
    err << "violation: a per-step invariant of the trace failed\n";
    violated = true;
  }
  if (r.invariants.small_norms_ok) {
    if (!r.e2_ok) {
      err << "violation: a hybrid step exceeded its drift bound\n";
      violated = true;
    }
    if (!r.total_ok) {
      err << "violation: hybrid total distance exceeds 1/5\n";
      violated = true;
    }
    if (r.total_ok && !r.soundness_ok) {
      err << "violation: both inputs of the surviving pair are answered "
             "above the threshold despite total distance <= 1/5\n";
      violated = true;
    }
  }
  if (!opt.out_path.empty()) {
    out << "pair (" << r.hybrid.k_late << ", " << r.hybrid.k_early
        << "): " << (verdict.distinguishable ? "distinguishable"
                                             : "not distinguishable")
        << ", trace written to " << opt.out_path << "\n";
  }
  return violated ? kExitViolation : kExitOk;
}

int attack_direct(const AttackOptions& opt, const QueryAlgorithm& alg,
                  std::ostream& out, std::ostream& err) {
  std::vector<PairOutcome> pairs;
  pairs.reserve(opt.n - 1);
  const ThresholdInput first(0, opt.n);
  StateVector prev_final = run_full(alg, first);
  IndexDistribution prev_dist = measure_index_distribution(prev_final);
  for (std::size_t k_lo = 0; k_lo + 1 < opt.n; ++k_lo) {
    const std::size_t k_hi = k_lo + 1;
    const StateVector cur_final = run_full(alg, ThresholdInput(k_hi, opt.n));
    const IndexDistribution cur_dist = measure_index_distribution(cur_final);

    PairOutcome p;
    p.k_lo = k_lo;
    p.k_hi = k_hi;
    p.total_distance = l2_distance(prev_final, cur_final);
    p.success_lo = prev_dist.probabilities[k_lo];
    p.success_hi = cur_dist.probabilities[k_hi];
    p.variational = variational_distance(prev_dist, cur_dist);
    p.verdict = verdict_from_metrics(p.total_distance, p.success_lo,
                                     p.success_hi, opt.success_threshold,
                                     k_lo, k_hi);
    pairs.push_back(std::move(p));

    prev_final = cur_final;
    prev_dist = cur_dist;
  }

  std::string doc;
  if (opt.format == "json") {
    doc = direct_attack_json(opt.n, opt.algorithm, opt.success_threshold,
                             pairs);
  } else if (opt.format == "csv") {
    doc = direct_attack_csv(pairs);
  } else {
    throw config_error("unknown format '" + opt.format + "'");
  }
  if (!emit(doc, opt.out_path, out, err)) return kExitConfig;

  if (!opt.out_path.empty()) {
    std::size_t count = 0;
    for (const PairOutcome& p : pairs)
      if (p.verdict.distinguishable) ++count;
    out << count << " of " << pairs.size()
        << " adjacent pairs distinguishable, written to " << opt.out_path
        << "\n";
  }
  return kExitOk;
}

}  // namespace

int cmd_attack(const AttackOptions& opt, std::ostream& out,
               std::ostream& err) {
  try {
    const int given = int(opt.q.has_value()) + int(opt.t.has_value()) +
                      int(opt.u.has_value());
    if (given != 0 && given != 3) {
      throw config_error(
          "provide all of --q/--t/--u for an adversary run or none of them "
          "for the direct pair scan");
    }
    if (given == 0 && opt.v_override.has_value()) {
      throw config_error("--v-override only applies to an adversary run");
    }
    const AlgorithmSpec spec =
        parse_algorithm_spec(opt.algorithm, opt.n, opt.seed);
    const QueryAlgorithm alg = make_algorithm(spec);
    return given == 3 ? attack_full(opt, alg, out, err)
                      : attack_direct(opt, alg, out, err);
  } catch (const regime_error& e) {
    err << "regime error: " << e.what() << "\n";
    return kExitRegime;
  } catch (const config_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

int cmd_verify(const VerifyOptions& opt, std::ostream& out,
               std::ostream& err) {
  try {
    SuiteConfig cfg;
    cfg.n = opt.n;
    cfg.q = opt.q;
    cfg.t = opt.t;
    cfg.u = opt.u;
    cfg.v_override = opt.v_override;
    cfg.num_algorithms = opt.num_algorithms;
    cfg.algorithm_queries = opt.algorithm_queries;
    cfg.seed = opt.seed;
    cfg.tol = opt.tol;
    cfg.bv_pairs = opt.bv_pairs;
    cfg.bv_n = opt.bv_n;
    cfg.bv_constant = opt.bv_constant;
    cfg.lifted_n = opt.lifted_n;
    const SuiteResult res = run_inequality_suite(cfg);
    out << res.text_report();
    return res.passed ? kExitOk : kExitViolation;
  } catch (const regime_error& e) {
    err << "regime error: " << e.what() << "\n";
    return kExitRegime;
  } catch (const config_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    if (opt.qs.empty() || opt.ts.empty() || opt.us.empty()) {
      throw config_error("sweep needs at least one value in each of "
                         "--q, --t, --u");
    }
    std::vector<SweepRow> rows;
    for (double q : opt.qs) {
      for (int t : opt.ts) {
        for (int u : opt.us) {
          SweepRow row;
          row.q = q;
          row.t = t;
          row.u = u;
          try {
            const AdversaryParams p = derive_params(q, t, u);
            row.accepted = true;
            row.q_prime = p.q_prime;
            row.v = p.v;
            row.coefficient = query_count_coefficient(t, u);
            row.coefficient_fraction = coefficient_fraction(t, u);
          } catch (const config_error& e) {
            row.accepted = false;
            row.reject_reason = e.what();
          }
          rows.push_back(std::move(row));
        }
      }
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const SweepRow& a, const SweepRow& b) {
                       // Accepted rows first, best saving first; rejected
                       // rows trail in parameter order.
                       if (a.accepted != b.accepted) return a.accepted;
                       if (a.accepted && a.coefficient != b.coefficient)
                         return a.coefficient > b.coefficient;
                       if (a.q != b.q) return a.q < b.q;
                       if (a.t != b.t) return a.t < b.t;
                       return a.u < b.u;
                     });

    std::string doc;
    if (opt.format == "csv") {
      doc = sweep_csv(rows);
    } else if (opt.format == "json") {
      doc = sweep_json(rows);
    } else {
      throw config_error("unknown format '" + opt.format + "'");
    }
    if (!emit(doc, opt.out_path, out, err)) return kExitConfig;
    return kExitOk;
  } catch (const config_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

namespace {

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw config_error("empty entry in list '" + text + "'");
    std::size_t pos = 0;
    const double x = std::stod(item, &pos);
    if (pos != item.size())
      throw config_error("bad number '" + item + "' in list");
    out.push_back(x);
  }
  if (out.empty()) throw config_error("empty list");
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw config_error("empty entry in list '" + text + "'");
    std::size_t pos = 0;
    const int x = std::stoi(item, &pos);
    if (pos != item.size())
      throw config_error("bad integer '" + item + "' in list");
    out.push_back(x);
  }
  if (out.empty()) throw config_error("empty list");
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"query-model workbench for ordered search"};
  app.require_subcommand(1);

  // params
  auto* params_cmd = app.add_subcommand(
      "params", "derive and validate adversary parameters");
  ParamsOptions popt;
  params_cmd->add_option("--q", popt.q, "weight base, > 1")->required();
  params_cmd->add_option("--t", popt.t, "subdivision arity, power of two")
      ->required();
  params_cmd->add_option("--u", popt.u, "subdivisions per round")->required();

  // attack
  auto* attack_cmd = app.add_subcommand(
      "attack", "find and test a hard adjacent pair for an algorithm");
  AttackOptions aopt;
  double a_q = 0.0;
  int a_t = 0, a_u = 0, a_v = 0;
  attack_cmd->add_option("--n", aopt.n, "list length, power of two")
      ->required();
  attack_cmd
      ->add_option("--algorithm", aopt.algorithm,
                   "lifted-bs | truncated-bs:<cut> | zero-query | "
                   "random:T=..,w=..,seed=..")
      ->required();
  auto* oq = attack_cmd->add_option("--q", a_q, "adversary weight base");
  auto* ot = attack_cmd->add_option("--t", a_t, "adversary arity");
  auto* ou = attack_cmd->add_option("--u", a_u, "subdivisions per round");
  auto* ov = attack_cmd->add_option("--v-override", a_v,
                                    "override the stopping depth");
  attack_cmd->add_option("--success-threshold", aopt.success_threshold,
                         "success bar for the verdict (default 0.75)");
  attack_cmd->add_option("--seed", aopt.seed,
                         "seed for random algorithm specs");
  attack_cmd->add_option("--out", aopt.out_path, "write the document here");
  attack_cmd->add_option("--format", aopt.format, "json or csv");

  // verify
  auto* verify_cmd = app.add_subcommand(
      "verify", "run the inequality suite over seeded random algorithms");
  VerifyOptions vopt;
  verify_cmd->add_option("--n", vopt.n, "list length (default 512)");
  verify_cmd->add_option("--q", vopt.q, "weight base (default 18.3)");
  verify_cmd->add_option("--t", vopt.t, "arity (default 8)");
  verify_cmd->add_option("--u", vopt.u, "subdivisions per round (default 4)");
  verify_cmd->add_option("--v-override", vopt.v_override,
                         "stopping depth for the traces (0 = auto)");
  verify_cmd->add_option("--algorithms", vopt.num_algorithms,
                         "number of random algorithms (default 20)");
  verify_cmd->add_option("--queries", vopt.algorithm_queries,
                         "queries per random algorithm (default 3)");
  verify_cmd->add_option("--seed", vopt.seed, "base seed");
  verify_cmd->add_option("--bv-pairs", vopt.bv_pairs,
                         "random state pairs for the measurement gap");
  verify_cmd->add_option("--bv-constant", vopt.bv_constant,
                         "asserted gap constant (default 4)");
  verify_cmd->add_option("--tol", vopt.tol, "inequality slack");

  // sweep
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "tabulate parameter combinations by query saving");
  SweepOptions sopt;
  std::string s_q, s_t, s_u;
  sweep_cmd->add_option("--q", s_q, "comma-separated weight bases")
      ->required();
  sweep_cmd->add_option("--t", s_t, "comma-separated arities")->required();
  sweep_cmd->add_option("--u", s_u, "comma-separated subdivision counts")
      ->required();
  sweep_cmd->add_option("--out", sopt.out_path, "write the table here");
  sweep_cmd->add_option("--format", sopt.format, "csv or json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (params_cmd->parsed())
      return cmd_params(popt, std::cout, std::cerr);
    if (attack_cmd->parsed()) {
      if (oq->count()) aopt.q = a_q;
      if (ot->count()) aopt.t = a_t;
      if (ou->count()) aopt.u = a_u;
      if (ov->count()) aopt.v_override = a_v;
      return cmd_attack(aopt, std::cout, std::cerr);
    }
    if (verify_cmd->parsed())
      return cmd_verify(vopt, std::cout, std::cerr);
    if (sweep_cmd->parsed()) {
      sopt.qs = parse_double_list(s_q);
      sopt.ts = parse_int_list(s_t);
      sopt.us = parse_int_list(s_u);
      return cmd_sweep(sopt, std::cout, std::cerr);
    }
  } catch (const regime_error& e) {
    std::cerr << "regime error: " << e.what() << "\n";
    return kExitRegime;
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace qsearch
