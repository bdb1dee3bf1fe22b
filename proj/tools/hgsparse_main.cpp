// Command-line front end: generate, sparsify, verify, and solve over the
// text formats described in the README. Exit codes: 0 success/pass, 1 failed
// verification, 2 input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <variant>

#include "CLI11.hpp"
#include "hgsparse/hgsparse.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;
using namespace hgsparse;

AnyHypergraph load_hypergraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
  return read_hypergraph(in);
}

template <class HypergraphT>
void save_hypergraph(const std::string& path, const HypergraphT& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  write_hypergraph(out, g);
}

json witness_to_json(const VerifyWitness& witness) {
  json j;
  if (const auto* subset = std::get_if<std::vector<int>>(&witness)) {
    j["subset"] = *subset;
  } else if (const auto* vec = std::get_if<Eigen::VectorXd>(&witness)) {
    j["vector"] = std::vector<double>(vec->data(), vec->data() + vec->size());
  } else if (const auto* pp = std::get_if<PermutationPositionWitness>(&witness)) {
    j["order"] = pp->pi.order();
    j["i"] = pp->i;
    j["j"] = pp->j;
  } else if (const auto* stat = std::get_if<double>(&witness)) {
    j["statistic"] = *stat;
  }
  return j;
}

json report_to_json(const VerifyReport& report) {
  json j{{"passed", report.passed},
         {"checks_run", report.checks_run},
         {"worst_ratio_low", report.worst_ratio_low},
         {"worst_ratio_high", report.worst_ratio_high}};
  if (report.witness) j["witness"] = witness_to_json(*report.witness);
  return j;
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open report file '" + path + "'");
  out << j.dump(2) << '\n';
}

struct SparsifyArgs {
  std::string input, output, report_path;
  double epsilon = 0.0;
  double delta = -1.0;
  std::uint64_t seed = 0;
};

int run_sparsify(const SparsifyArgs& args) {
  const AnyHypergraph any = load_hypergraph(args.input);
  const std::optional<double> delta =
      args.delta >= 0.0 ? std::optional<double>(args.delta) : std::nullopt;
  json j;
  std::visit(
      [&](const auto& g) {
        const auto [h, report] = sparsify(g, args.epsilon, args.seed, delta);
        save_hypergraph(args.output, h);
        j = json{{"kind", std::is_same_v<std::decay_t<decltype(g)>, DirectedHypergraph> ? "dhg"
                                                                                        : "uhg"},
                 {"n", g.vertex_count()},
                 {"m_in", std::is_same_v<std::decay_t<decltype(g)>, DirectedHypergraph>
                              ? std::get<DirectedHypergraph>(any).arcs().size()
                              : std::get<UndirectedHypergraph>(any).edges().size()},
                 {"epsilon", args.epsilon},
                 {"delta", delta.value_or(g.vertex_count() >= 1 ? 1.0 / (2.0 * g.vertex_count())
                                                                : 0.5)},
                 {"seed", report.seed},
                 {"K", report.rounds},
                 {"sum_p", report.sum_p},
                 {"expected_retained", report.expected_retained},
                 {"retained_count", report.retained_count}};
      },
      any);
  std::cout << j.dump() << '\n';
  if (!args.report_path.empty()) write_json(args.report_path, j);
  return 0;
}

struct VerifyArgs {
  std::string mode, g_path, h_path, report_path;
  double epsilon = 0.0;
  int trials = 200;
  std::uint64_t seed = 0;
};

int run_verify(const VerifyArgs& args) {
  const AnyHypergraph ga = load_hypergraph(args.g_path);
  const AnyHypergraph ha = load_hypergraph(args.h_path);
  if (ga.index() != ha.index()) {
    throw std::invalid_argument("verify: --g and --h must be the same kind of hypergraph");
  }

  VerifyReport report;
  auto dispatch = [&](const auto& g, const auto& h) {
    if (args.mode == "cut") {
      report = cut_check_exhaustive(g, h, args.epsilon);
    } else if (args.mode == "spectral") {
      report = spectral_check_random(g, h, args.epsilon, args.trials, args.seed);
    } else if (args.mode == "certificate") {
      report = certificate_check_all_permutations(g, h, args.epsilon);
    } else {  // resistance: --trials random vertex pairs
      const int n = g.vertex_count();
      if (n < 2) throw std::invalid_argument("verify resistance: need at least two vertices");
      std::mt19937_64 rng(args.seed);
      std::uniform_int_distribution<int> pick(0, n - 1);
      std::vector<std::pair<int, int>> pairs;
      const int wanted = std::min(args.trials, n * (n - 1) / 2);
      while (static_cast<int>(pairs.size()) < wanted) {
        const int s = pick(rng), t = pick(rng);
        if (s != t) pairs.emplace_back(s, t);
      }
      report = resistance_check(g, h, args.epsilon, pairs);
    }
  };
  if (ga.index() == 0) {
    dispatch(std::get<UndirectedHypergraph>(ga), std::get<UndirectedHypergraph>(ha));
  } else {
    dispatch(std::get<DirectedHypergraph>(ga), std::get<DirectedHypergraph>(ha));
  }

  json j = report_to_json(report);
  j["mode"] = args.mode;
  j["epsilon"] = args.epsilon;
  std::cout << j.dump() << '\n';
  if (!args.report_path.empty()) write_json(args.report_path, j);
  return report.passed ? 0 : 1;
}

struct EffresArgs {
  std::string input;
  int s = 0, t = 0;
  int max_iters = 100000;
  double tol = 1e-8;
  bool oracle = false;
};

int run_effres(const EffresArgs& args) {
  const AnyHypergraph any = load_hypergraph(args.input);
  SolverParams params;
  params.max_iters = args.max_iters;
  params.tol = args.tol;
  json j;
  std::visit(
      [&](const auto& g) {
        const SolveResult result = effective_resistance(g, args.s, args.t, params);
        j = json{{"resistance", result.objective},
                 {"iterations", result.iterations_used},
                 {"converged", result.converged}};
      },
      any);
  if (args.oracle) {
    const auto* undirected = std::get_if<UndirectedHypergraph>(&any);
    if (!undirected) {
      throw std::invalid_argument("effres: --oracle requires an undirected 2-uniform input");
    }
    j["oracle"] = graph_effective_resistance(Graph(*undirected), args.s, args.t);
  }
  std::cout << j.dump() << '\n';
  return 0;
}

struct SslArgs {
  std::string input, labels;
  double sparsify_epsilon = -1.0;
  std::uint64_t seed = 0;
};

int run_ssl(const SslArgs& args) {
  const AnyHypergraph any = load_hypergraph(args.input);
  // undirected inputs are handled as tail = head = e
  DirectedHypergraph g;
  if (const auto* undirected = std::get_if<UndirectedHypergraph>(&any)) {
    std::vector<Hyperarc> arcs;
    for (const Hyperedge& e : undirected->edges()) arcs.push_back({e.vertices, e.vertices, e.weight});
    g = DirectedHypergraph(undirected->vertex_count(), std::move(arcs));
  } else {
    g = std::get<DirectedHypergraph>(any);
  }

  std::ifstream label_stream(args.labels);
  if (!label_stream) throw std::runtime_error("cannot open label file '" + args.labels + "'");
  const Labeling labels = read_labels(label_stream, g.vertex_count());

  json j;
  if (args.sparsify_epsilon > 0.0) {
    const auto [h, report] = sparsify(g, args.sparsify_epsilon, args.seed);
    const SolveResult result = ssl_solve(h, labels);
    j["sparsified_m"] = h.arcs().size();
    j["objective_on_input"] = quadratic_form(g, result.x);
    j["objective"] = result.objective;
    j["iterations"] = result.iterations_used;
    j["converged"] = result.converged;
    j["x"] = std::vector<double>(result.x.data(), result.x.data() + result.x.size());
  } else {
    const SolveResult result = ssl_solve(g, labels);
    j["objective"] = result.objective;
    j["iterations"] = result.iterations_used;
    j["converged"] = result.converged;
    j["x"] = std::vector<double>(result.x.data(), result.x.data() + result.x.size());
  }
  std::cout << j.dump() << '\n';
  return 0;
}

struct GenArgs {
  std::string kind, output;
  int n = 0, m = 0, r = 2, nu = 0;
  bool mixed = false, directed = false, demo = false;
  double wmin = 0.0, wmax = 0.0;
  std::uint64_t seed = 0;
};

int run_gen(const GenArgs& args) {
  GenSpec spec;
  spec.seed = args.seed;
  if (args.kind == "random") {
    spec.kind = args.mixed ? GenKind::RandomMixed : GenKind::RandomUniform;
    spec.n = args.n;
    spec.m = args.m;
    spec.r = args.r;
    spec.directed = args.directed;
    if (args.wmin > 0.0 || args.wmax > 0.0) {
      spec.unit_weights = false;
      spec.weight_min = args.wmin;
      spec.weight_max = args.wmax;
    }
  } else if (args.kind == "complete") {
    spec.kind = GenKind::CompleteGraph;
    spec.n = args.n;
  } else {  // appendix
    spec.kind = GenKind::Appendix;
    spec.n = args.nu;
    spec.r = args.r;
  }

  if (spec.directed) {
    save_hypergraph(args.output, generate_directed(spec));
  } else {
    const UndirectedHypergraph g = generate_undirected(spec);
    save_hypergraph(args.output, g);
    if (args.demo && spec.kind == GenKind::Appendix) {
      json values = json::array();
      for (std::size_t e = 0; e < g.edges().size(); ++e) {
        values.push_back(appendix_demo(args.nu, args.r, static_cast<int>(e)));
      }
      std::cout << json{{"collapsed_pair_resistance", values}}.dump() << '\n';
    }
  }
  return 0;
}

struct StatsArgs {
  std::string input;
  double epsilon = 0.5;
  double delta = -1.0;
};

int run_stats(const StatsArgs& args) {
  const AnyHypergraph any = load_hypergraph(args.input);
  json j;
  std::visit(
      [&](const auto& g) {
        const int n = g.vertex_count();
        const double delta = args.delta >= 0.0 ? args.delta : (n >= 1 ? 1.0 / (2.0 * n) : 0.5);
        const SamplingPlan plan = sampling_plan(g, args.epsilon, delta);
        j = json{{"kind", std::is_same_v<std::decay_t<decltype(g)>, DirectedHypergraph> ? "dhg"
                                                                                        : "uhg"},
                 {"n", n},
                 {"m", plan.probabilities.size()},
                 {"size", size(g)},
                 {"sum_p", plan.sum_p},
                 {"K", plan.rounds},
                 {"epsilon", args.epsilon},
                 {"delta", delta}};
      },
      any);
  std::cout << j.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral sparsification of undirected and directed hypergraphs"};
  app.require_subcommand(1);

  SparsifyArgs sparsify_args;
  CLI::App* cmd_sparsify = app.add_subcommand("sparsify", "sample a spectral sparsifier");
  cmd_sparsify->add_option("--input", sparsify_args.input, "hypergraph file")->required();
  cmd_sparsify->add_option("--epsilon", sparsify_args.epsilon, "accuracy in (0,1)")->required();
  cmd_sparsify->add_option("--delta", sparsify_args.delta, "failure probability (default 1/2n)");
  cmd_sparsify->add_option("--seed", sparsify_args.seed, "random seed");
  cmd_sparsify->add_option("--output", sparsify_args.output, "output file")->required();
  cmd_sparsify->add_option("--report", sparsify_args.report_path, "JSON report file");

  VerifyArgs verify_args;
  CLI::App* cmd_verify = app.add_subcommand("verify", "check the sparsifier condition");
  cmd_verify->set_help_flag("--help", "print help");  // frees -h for the --h option below
  cmd_verify->add_option("mode", verify_args.mode, "cut|spectral|certificate|resistance")
      ->required()
      ->check(CLI::IsMember({"cut", "spectral", "certificate", "resistance"}));
  cmd_verify->add_option("--g", verify_args.g_path, "reference hypergraph")->required();
  cmd_verify->add_option("--h", verify_args.h_path, "candidate sparsifier")->required();
  cmd_verify->add_option("--epsilon", verify_args.epsilon, "band width")->required();
  cmd_verify->add_option("--trials", verify_args.trials,
                         "sampled vectors (spectral) or vertex pairs (resistance)");
  cmd_verify->add_option("--seed", verify_args.seed, "random seed");
  cmd_verify->add_option("--report", verify_args.report_path, "JSON report file");

  EffresArgs effres_args;
  CLI::App* cmd_effres = app.add_subcommand("effres", "effective resistance between two vertices");
  cmd_effres->add_option("--input", effres_args.input, "hypergraph file")->required();
  cmd_effres->add_option("--s", effres_args.s, "source vertex")->required();
  cmd_effres->add_option("--t", effres_args.t, "target vertex")->required();
  cmd_effres->add_option("--max-iters", effres_args.max_iters, "iteration budget");
  cmd_effres->add_option("--tol", effres_args.tol, "relative stopping tolerance");
  cmd_effres->add_flag("--oracle", effres_args.oracle,
                       "also solve the Laplacian system exactly (2-uniform inputs only)");

  SslArgs ssl_args;
  CLI::App* cmd_ssl = app.add_subcommand("ssl", "semi-supervised label completion");
  cmd_ssl->add_option("--input", ssl_args.input, "hypergraph file")->required();
  cmd_ssl->add_option("--labels", ssl_args.labels, "label file")->required();
  cmd_ssl->add_option("--sparsify-epsilon", ssl_args.sparsify_epsilon,
                      "sparsify before solving at this accuracy");
  cmd_ssl->add_option("--seed", ssl_args.seed, "random seed");

  GenArgs gen_args;
  CLI::App* cmd_gen = app.add_subcommand("gen", "generate an instance");
  cmd_gen->add_option("kind", gen_args.kind, "random|complete|appendix")
      ->required()
      ->check(CLI::IsMember({"random", "complete", "appendix"}));
  cmd_gen->add_option("--n", gen_args.n, "vertex count");
  cmd_gen->add_option("--m", gen_args.m, "edge count (random)");
  cmd_gen->add_option("--r", gen_args.r, "uniformity / size bound");
  cmd_gen->add_option("--nu", gen_args.nu, "universe size (appendix)");
  cmd_gen->add_flag("--mixed", gen_args.mixed, "mixed edge sizes (random)");
  cmd_gen->add_flag("--directed", gen_args.directed, "directed instance (random)");
  cmd_gen->add_flag("--demo", gen_args.demo,
                    "print per-edge collapsed-pair resistances (appendix)");
  cmd_gen->add_option("--wmin", gen_args.wmin, "uniform weight lower bound");
  cmd_gen->add_option("--wmax", gen_args.wmax, "uniform weight upper bound");
  cmd_gen->add_option("--seed", gen_args.seed, "random seed");
  cmd_gen->add_option("--output", gen_args.output, "output file")->required();

  StatsArgs stats_args;
  CLI::App* cmd_stats = app.add_subcommand("stats", "instance statistics and sampling plan");
  cmd_stats->add_option("--input", stats_args.input, "hypergraph file")->required();
  cmd_stats->add_option("--epsilon", stats_args.epsilon, "accuracy for the K column");
  cmd_stats->add_option("--delta", stats_args.delta, "failure probability (default 1/2n)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(cmd_sparsify)) return run_sparsify(sparsify_args);
    if (app.got_subcommand(cmd_verify)) return run_verify(verify_args);
    if (app.got_subcommand(cmd_effres)) return run_effres(effres_args);
    if (app.got_subcommand(cmd_ssl)) return run_ssl(ssl_args);
    if (app.got_subcommand(cmd_gen)) return run_gen(gen_args);
    if (app.got_subcommand(cmd_stats)) return run_stats(stats_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
