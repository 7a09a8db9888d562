#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "seedq/baselines.hpp"
#include "seedq/cascade.hpp"
#include "seedq/edge_list.hpp"
#include "seedq/errors.hpp"
#include "seedq/experiment.hpp"
#include "seedq/generators.hpp"
#include "seedq/probe.hpp"
#include "seedq/sketch_seed.hpp"
#include "seedq/spread_seed.hpp"

namespace {

using namespace seedq;

struct Common {
  std::string graph;
  std::optional<double> p;
  bool directed = false;
  std::size_t k = 5;
  double epsilon = 0.5;
  double delta = 1.0;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
};

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void add_graph_options(CLI::App* app, Common& c) {
  app->add_option("--graph", c.graph, "Edge-list file (u v [prob] per line)")->required();
  app->add_option("--p", c.p, "Cascade probability for every edge (overrides the file)");
  app->add_flag("--directed", c.directed, "Read the edge list as directed");
}

void add_seed_options(CLI::App* app, Common& c) {
  app->add_option("--k", c.k, "Number of seeds")->capture_default_str();
  app->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  app->add_option("--out", c.out, "Output file (default stdout)");
  app->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

Graph load_graph(const Common& c) {
  LoadOptions options;
  if (c.directed) options.directed = true;
  Graph graph = load_edge_list_file(c.graph, options).graph;
  if (c.p) graph = graph.with_uniform_prob(*c.p);
  return graph;
}

void emit(const Common& c, const SeedResult& result) {
  Output out(c.out);
  if (c.format == "json") {
    write_seed_result_json(out.stream(), result);
    return;
  }
  auto& s = out.stream();
  s << "algorithm,value,kept_edges,discarded_edges,spread_queries,reverse_queries,nominations,"
       "seeds\n";
  s << result.algorithm << ',' << (result.value ? std::to_string(*result.value) : "") << ','
    << result.query_cost.kept_edges << ',' << result.query_cost.discarded_edges << ','
    << result.query_cost.spread_queries << ',' << result.query_cost.reverse_queries << ','
    << result.query_cost.nominations << ',';
  for (std::size_t i = 0; i < result.seeds.size(); ++i) {
    s << (i ? " " : "") << result.seeds[i];
  }
  s << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"seedq: influence maximization under edge and spread query access"};
  app.require_subcommand(1);

  // gen
  GraphSource gen_src;
  std::optional<double> gen_p;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a graph and write it as an edge list");
  gen->add_option("--type", gen_src.generator, "Generator")
      ->check(CLI::IsMember({"er", "pa", "star", "clique-circle", "clique-isolated"}))
      ->capture_default_str();
  gen->add_option("--n", gen_src.n, "Number of nodes")->capture_default_str();
  gen->add_option("--edge-prob", gen_src.edge_prob, "Erdos-Renyi edge probability")
      ->capture_default_str();
  gen->add_option("--m", gen_src.m, "Edges per new node (preferential attachment)")
      ->capture_default_str();
  gen->add_option("--mu", gen_src.mu, "Clique-circle parameter")->capture_default_str();
  gen->add_option("--clique-size", gen_src.clique_size, "Clique size (clique-isolated)")
      ->capture_default_str();
  gen->add_flag("--directed", gen_src.directed, "Directed output (star: edges leave the center)");
  gen->add_option("--seed", gen_src.seed, "Generator seed")->capture_default_str();
  gen->add_option("--p", gen_p, "Cascade probability stored with the edges");
  gen->add_option("--out", gen_out, "Output file (default stdout)");

  // probe-seed
  Common probe_c;
  std::optional<double> probe_rho;
  std::optional<std::size_t> probe_T;
  std::optional<std::size_t> probe_tau;
  std::optional<double> eps_prime;
  std::optional<std::uint64_t> edge_budget;
  std::optional<double> reveal_p;
  std::string sketch_out;
  std::string sketch_in;
  auto* probe_cmd = app.add_subcommand("probe-seed", "Probe a sketch with edge queries and seed it");
  probe_cmd->add_option("--graph", probe_c.graph, "Edge-list file");
  probe_cmd->add_option("--p", probe_c.p, "Cascade probability for every edge");
  probe_cmd->add_flag("--directed", probe_c.directed, "Read the edge list as directed");
  add_seed_options(probe_cmd, probe_c);
  probe_cmd->add_option("--epsilon", probe_c.epsilon, "Accuracy target")->capture_default_str();
  probe_cmd->add_option("--delta", probe_c.delta, "Confidence parameter")->capture_default_str();
  probe_cmd->add_option("--rho", probe_rho, "Sampling fraction (default from epsilon, delta)");
  probe_cmd->add_option("--T", probe_T, "Number of probed copies");
  probe_cmd->add_option("--tau", probe_tau, "Component size cap");
  probe_cmd->add_option("--eps-prime", eps_prime, "Candidate sample parameter (default epsilon/7)");
  probe_cmd->add_option("--edge-budget", edge_budget, "Stop probing after this many edge reveals");
  probe_cmd->add_option("--reveal-p", reveal_p,
                        "Experimental: reveal edges with this probability instead of p");
  probe_cmd->add_option("--sketch-out", sketch_out, "Save the sketch as JSON");
  probe_cmd->add_option("--sketch-in", sketch_in, "Seed from a saved sketch instead of probing");

  // spread-seed / lt-spread-seed
  Common spread_c;
  std::optional<std::size_t> rounds_rho;
  auto* spread_cmd = app.add_subcommand("spread-seed", "Seed with rounds of spread queries");
  add_graph_options(spread_cmd, spread_c);
  add_seed_options(spread_cmd, spread_c);
  spread_cmd->add_option("--epsilon", spread_c.epsilon, "Accuracy target")->capture_default_str();
  spread_cmd->add_option("--rounds-rho", rounds_rho, "Queries per round (default from epsilon)");

  Common lt_c;
  std::optional<std::size_t> lt_rounds_rho;
  auto* lt_cmd = app.add_subcommand(
      "lt-spread-seed", "Seed a linear-threshold graph with rounds of reverse traces");
  lt_cmd->add_option("--graph", lt_c.graph, "Directed 'u v b' edge list (b = weight)")->required();
  add_seed_options(lt_cmd, lt_c);
  lt_cmd->add_option("--epsilon", lt_c.epsilon, "Accuracy target")->capture_default_str();
  lt_cmd->add_option("--rounds-rho", lt_rounds_rho, "Traces per round (default from epsilon)");

  // baselines
  Common greedy_c;
  std::size_t greedy_sims = 200;
  auto* greedy_cmd = app.add_subcommand("greedy", "Full-information lazy greedy (Monte Carlo)");
  add_graph_options(greedy_cmd, greedy_c);
  add_seed_options(greedy_cmd, greedy_c);
  greedy_cmd->add_option("--sims", greedy_sims, "Cascades per evaluation")->capture_default_str();

  Common random_c;
  std::optional<std::size_t> random_n;
  auto* random_cmd = app.add_subcommand("random", "Uniform random seeds");
  random_cmd->add_option("--graph", random_c.graph, "Edge-list file (for n)");
  random_cmd->add_option("--n", random_n, "Number of nodes when no graph is given");
  add_seed_options(random_cmd, random_c);

  Common hop_c;
  auto* hop_cmd = app.add_subcommand("one-hop", "Random nodes nominate a random neighbor");
  add_graph_options(hop_cmd, hop_c);
  add_seed_options(hop_cmd, hop_c);

  Common degree_c;
  auto* degree_cmd = app.add_subcommand("degree", "Highest-degree nodes");
  add_graph_options(degree_cmd, degree_c);
  add_seed_options(degree_cmd, degree_c);

  // eval
  Common eval_c;
  std::string seeds_file;
  std::size_t eval_sims = 500;
  bool eval_lt = false;
  auto* eval_cmd = app.add_subcommand("eval", "Estimate the spread of a seed set");
  add_graph_options(eval_cmd, eval_c);
  eval_cmd->add_option("--seeds", seeds_file, "File with whitespace-separated node ids")
      ->required();
  eval_cmd->add_option("--eval-sims", eval_sims, "Cascades to simulate")->capture_default_str();
  eval_cmd->add_flag("--lt", eval_lt, "Treat the graph as a linear-threshold edge list");
  eval_cmd->add_option("--seed", eval_c.seed, "RNG seed")->capture_default_str();
  eval_cmd->add_option("--out", eval_c.out, "Output file (default stdout)");
  eval_cmd->add_option("--format", eval_c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));

  // bound
  std::size_t bound_n = 1000;
  Common bound_c;
  double bound_p = 0.1;
  auto* bound_cmd =
      app.add_subcommand("bound", "Probing parameters and the predicted edge-query bound");
  bound_cmd->add_option("--n", bound_n, "Number of nodes")->capture_default_str();
  bound_cmd->add_option("--k", bound_c.k, "Number of seeds")->capture_default_str();
  bound_cmd->add_option("--epsilon", bound_c.epsilon, "Accuracy target")->capture_default_str();
  bound_cmd->add_option("--delta", bound_c.delta, "Confidence parameter")->capture_default_str();
  bound_cmd->add_option("--p", bound_p, "Cascade probability")->capture_default_str();
  bound_cmd->add_option("--format", bound_c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));

  // sweep
  std::string config_path;
  Common sweep_c;
  std::optional<std::size_t> sweep_reps;
  std::optional<std::size_t> sweep_eval;
  std::optional<std::uint64_t> sweep_seed;
  std::string summary_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run an experiment sweep from a config file");
  sweep_cmd->add_option("--config", config_path,
                        "Config file: [graph] [model] [algorithm] [sweep] [run] [profit]")
      ->required();
  sweep_cmd->add_option("--reps", sweep_reps, "Override run.repetitions");
  sweep_cmd->add_option("--eval-sims", sweep_eval, "Override run.eval_sims");
  sweep_cmd->add_option("--seed", sweep_seed, "Override run.seed");
  sweep_cmd->add_option("--out", sweep_c.out, "Output file (default stdout)");
  sweep_cmd->add_option("--summary", summary_path, "Also write the JSON summary here");
  sweep_c.format = "csv";
  sweep_cmd->add_option("--format", sweep_c.format, "csv rows or json summary")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const Graph g = build_graph(gen_src, gen_p);
      Output out(gen_out);
      write_edge_list(out.stream(), g);
    } else if (*probe_cmd) {
      Rng rng(probe_c.seed);
      if (!sketch_in.empty()) {
        std::ifstream in(sketch_in);
        if (!in) throw Error("cannot open sketch '" + sketch_in + "'");
        const Sketch sketch = read_sketch_json(in);
        Rng seed_rng = rng.substream(2);
        emit(probe_c, seed_from_sketch(sketch, probe_c.k,
                                       eps_prime.value_or(default_eps_prime(probe_c.epsilon)),
                                       seed_rng));
        return 0;
      }
      if (probe_c.graph.empty()) throw ParameterError("--graph or --sketch-in is required");
      const Graph g = load_graph(probe_c);
      ProbeParams params = probe_params_for(g.num_nodes(), probe_c.k, probe_c.epsilon,
                                            probe_c.delta);
      if (probe_rho) params.rho = *probe_rho;
      if (probe_T) params.copies = *probe_T;
      if (probe_tau) params.tau = *probe_tau;
      EdgeQueryOracle::Options options;
      options.edge_budget = edge_budget;
      options.reveal_prob = reveal_p;
      EdgeQueryOracle oracle(g, options);
      Rng probe_rng = rng.substream(1);
      Rng seed_rng = rng.substream(2);
      const Sketch sketch = probe(oracle, params, probe_rng);
      if (!sketch_out.empty()) {
        std::ofstream so(sketch_out);
        if (!so) throw Error("cannot open '" + sketch_out + "'");
        write_sketch_json(so, sketch);
      }
      SeedResult result = seed_from_sketch(
          sketch, probe_c.k, eps_prime.value_or(default_eps_prime(probe_c.epsilon)), seed_rng);
      result.rng_token = Rng(probe_c.seed).token();
      result.query_cost = oracle.ledger().snapshot();
      emit(probe_c, result);
    } else if (*spread_cmd) {
      const Graph g = load_graph(spread_c);
      SpreadQueryOracle oracle(g);
      Rng rng(spread_c.seed);
      const std::size_t rho =
          rounds_rho.value_or(param_rho_spread(g.num_nodes(), spread_c.k, spread_c.epsilon));
      emit(spread_c, spread_seed(oracle, spread_c.k, rho, rng));
    } else if (*lt_cmd) {
      std::ifstream in(lt_c.graph);
      if (!in) throw Error("cannot open '" + lt_c.graph + "'");
      const WeightedLTGraph lt = load_lt_edge_list(in);
      ReverseCascadeOracle oracle(lt);
      Rng rng(lt_c.seed);
      const std::size_t rho =
          lt_rounds_rho.value_or(param_rho_spread(lt.num_nodes(), lt_c.k, lt_c.epsilon));
      emit(lt_c, lt_spread_seed(oracle, lt_c.k, rho, rng));
    } else if (*greedy_cmd) {
      const Graph g = load_graph(greedy_c);
      Rng rng(greedy_c.seed);
      emit(greedy_c, greedy_full(g, greedy_c.k, greedy_sims, rng));
    } else if (*random_cmd) {
      std::size_t n = 0;
      if (!random_c.graph.empty()) {
        n = load_graph(random_c).num_nodes();
      } else if (random_n) {
        n = *random_n;
      } else {
        throw ParameterError("random needs --graph or --n");
      }
      Rng rng(random_c.seed);
      emit(random_c, random_seeds(n, random_c.k, rng));
    } else if (*hop_cmd) {
      const Graph g = load_graph(hop_c);
      NominationOracle oracle(g);
      Rng rng(hop_c.seed);
      emit(hop_c, one_hop(oracle, hop_c.k, rng));
    } else if (*degree_cmd) {
      emit(degree_c, top_degree(load_graph(degree_c), degree_c.k));
    } else if (*eval_cmd) {
      std::ifstream sf(seeds_file);
      if (!sf) throw Error("cannot open '" + seeds_file + "'");
      const auto seeds = read_seed_list(sf);
      Rng rng(eval_c.seed);
      InfluenceEstimate est;
      if (eval_lt) {
        std::ifstream in(eval_c.graph);
        if (!in) throw Error("cannot open '" + eval_c.graph + "'");
        est = influence_mc_lt(load_lt_edge_list(in), seeds, eval_sims, rng);
      } else {
        est = influence_mc(load_graph(eval_c), seeds, eval_sims, rng);
      }
      Output out(eval_c.out);
      if (eval_c.format == "csv") {
        out.stream() << "mean,std_error,n_sims\n"
                     << est.mean << ',' << est.std_error << ',' << est.n_sims << '\n';
      } else {
        out.stream() << "{\"mean\": " << est.mean << ", \"std_error\": " << est.std_error
                     << ", \"n_sims\": " << est.n_sims << "}\n";
      }
    } else if (*bound_cmd) {
      const BoundValues b = edge_query_bound(bound_n, bound_c.k, bound_c.epsilon, bound_c.delta,
                                           bound_p);
      const std::size_t spread_rho = param_rho_spread(bound_n, bound_c.k, bound_c.epsilon);
      if (bound_c.format == "csv") {
        std::cout << "n,k,epsilon,delta,p,rho,initial_nodes,T,tau,E,C,bound,spread_rho,"
                     "spread_total\n"
                  << bound_n << ',' << bound_c.k << ',' << bound_c.epsilon << ','
                  << bound_c.delta << ',' << bound_p << ',' << b.rho << ','
                  << b.initial_nodes << ',' << b.T << ',' << b.tau << ',' << b.E << ',' << b.C
                  << ',' << b.bound << ',' << spread_rho << ',' << spread_rho * bound_c.k
                  << '\n';
      } else {
        std::cout << "{\"rho\": " << b.rho << ", \"initial_nodes\": " << b.initial_nodes
                  << ", \"T\": " << b.T << ", \"tau\": " << b.tau << ", \"E\": " << b.E
                  << ", \"C\": " << b.C << ", \"bound\": " << b.bound
                  << ", \"spread_rho\": " << spread_rho
                  << ", \"spread_total\": " << spread_rho * bound_c.k << "}\n";
      }
    } else if (*sweep_cmd) {
      ExperimentConfig config = load_experiment_config(config_path);
      if (sweep_reps) config.repetitions = *sweep_reps;
      if (sweep_eval) config.eval_sims = *sweep_eval;
      if (sweep_seed) config.rng_seed = *sweep_seed;
      const ExperimentResult result = run_experiment(config);
      Output out(sweep_c.out);
      if (sweep_c.format == "csv") {
        write_experiment_csv(out.stream(), result);
      } else {
        write_experiment_json(out.stream(), config, result);
      }
      if (!summary_path.empty()) {
        Output summary(summary_path);
        write_experiment_json(summary.stream(), config, result);
      }
    }
  } catch (const seedq::Error& e) {
    std::cerr << "seedq: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
