#include "seedq/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include "seedq/baselines.hpp"
#include "seedq/cascade.hpp"
#include "seedq/edge_list.hpp"
#include "seedq/errors.hpp"
#include "seedq/generators.hpp"
#include "seedq/probe.hpp"
#include "seedq/sketch_seed.hpp"
#include "seedq/spread_seed.hpp"

namespace seedq {

namespace {

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return ec == std::errc() ? std::string(buf, ptr) : std::to_string(x);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("config key '" + key + "': cannot parse '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  throw ParseError("config key '" + key + "': expected a boolean, got '" + text + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> values;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) values.push_back(parse_number<double>(key, item));
  }
  return values;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& config_setters() {
  using C = ExperimentConfig;
  using S = std::string;
  static const std::map<std::string, Setter> setters = {
      {"graph.path", [](C& c, const S&, const S& v) { c.graph.path = v; }},
      {"graph.generator", [](C& c, const S&, const S& v) { c.graph.generator = v; }},
      {"graph.n", [](C& c, const S& k, const S& v) { c.graph.n = parse_number<std::size_t>(k, v); }},
      {"graph.edge_prob",
       [](C& c, const S& k, const S& v) { c.graph.edge_prob = parse_number<double>(k, v); }},
      {"graph.m", [](C& c, const S& k, const S& v) { c.graph.m = parse_number<std::size_t>(k, v); }},
      {"graph.mu", [](C& c, const S& k, const S& v) { c.graph.mu = parse_number<double>(k, v); }},
      {"graph.clique_size",
       [](C& c, const S& k, const S& v) { c.graph.clique_size = parse_number<std::size_t>(k, v); }},
      {"graph.directed",
       [](C& c, const S& k, const S& v) { c.graph.directed = parse_bool(k, v); }},
      {"graph.seed",
       [](C& c, const S& k, const S& v) { c.graph.seed = parse_number<std::uint64_t>(k, v); }},
      {"model.type", [](C& c, const S&, const S& v) { c.model = v; }},
      {"model.p", [](C& c, const S& k, const S& v) { c.p = parse_number<double>(k, v); }},
      {"model.lt_weights", [](C& c, const S&, const S& v) { c.lt_weights = v; }},
      {"algorithm.name", [](C& c, const S&, const S& v) { c.algorithm = parse_algorithm(v); }},
      {"algorithm.k", [](C& c, const S& k, const S& v) { c.k = parse_number<std::size_t>(k, v); }},
      {"algorithm.epsilon",
       [](C& c, const S& k, const S& v) { c.epsilon = parse_number<double>(k, v); }},
      {"algorithm.delta", [](C& c, const S& k, const S& v) { c.delta = parse_number<double>(k, v); }},
      {"algorithm.eps_prime",
       [](C& c, const S& k, const S& v) { c.eps_prime = parse_number<double>(k, v); }},
      {"algorithm.rho", [](C& c, const S& k, const S& v) { c.rho = parse_number<double>(k, v); }},
      {"algorithm.T", [](C& c, const S& k, const S& v) { c.T = parse_number<std::size_t>(k, v); }},
      {"algorithm.tau",
       [](C& c, const S& k, const S& v) { c.tau = parse_number<std::size_t>(k, v); }},
      {"algorithm.edge_budget",
       [](C& c, const S& k, const S& v) { c.edge_budget = parse_number<std::uint64_t>(k, v); }},
      {"algorithm.rounds_rho",
       [](C& c, const S& k, const S& v) { c.rounds_rho = parse_number<std::size_t>(k, v); }},
      {"algorithm.spread_budget",
       [](C& c, const S& k, const S& v) { c.spread_budget = parse_number<std::uint64_t>(k, v); }},
      {"algorithm.greedy_sims",
       [](C& c, const S& k, const S& v) { c.greedy_sims = parse_number<std::size_t>(k, v); }},
      {"sweep.param", [](C& c, const S&, const S& v) { c.sweep = v; }},
      {"sweep.values", [](C& c, const S& k, const S& v) { c.sweep_values = parse_list(k, v); }},
      {"run.repetitions",
       [](C& c, const S& k, const S& v) { c.repetitions = parse_number<std::size_t>(k, v); }},
      {"run.eval_sims",
       [](C& c, const S& k, const S& v) { c.eval_sims = parse_number<std::size_t>(k, v); }},
      {"run.seed",
       [](C& c, const S& k, const S& v) { c.rng_seed = parse_number<std::uint64_t>(k, v); }},
      {"profit.seed_cost",
       [](C& c, const S& k, const S& v) { c.profit.seed_cost = parse_number<double>(k, v); }},
      {"profit.query_cost",
       [](C& c, const S& k, const S& v) { c.profit.query_cost = parse_number<double>(k, v); }},
      {"profit.revenue",
       [](C& c, const S& k, const S& v) { c.profit.revenue = parse_number<double>(k, v); }},
  };
  return setters;
}

void apply_sweep_value(ExperimentConfig& c, const std::string& param, double value) {
  if (value < 0.0 || std::floor(value) != value) {
    throw ParameterError("sweep value " + format_double(value) + " is not a count");
  }
  const auto count = static_cast<std::uint64_t>(value);
  if (param == "T") {
    c.T = count;
  } else if (param == "rounds_rho") {
    c.rounds_rho = count;
  } else if (param == "budget") {
    c.spread_budget = count;
  } else if (param == "edge_budget") {
    c.edge_budget = count;
  } else if (param == "k") {
    c.k = count;
  } else {
    throw ParameterError("unknown sweep parameter '" + param + "'");
  }
}

struct Outcome {
  SeedResult seeds;
  std::uint64_t queries = 0;
  std::uint64_t revealed_nodes = 0;
  std::uint64_t sketch_edges = 0;
};

Outcome run_algorithm(const ExperimentConfig& c, const Graph& graph,
                      const WeightedLTGraph* lt, Rng& rng) {
  const std::size_t n = graph.num_nodes();
  Outcome out;
  switch (c.algorithm) {
    case Algorithm::kProbeSeed: {
      if (lt != nullptr) throw ModelError("probe-seed runs on independent cascades only");
      if (c.T && *c.T == 0) {
        out.seeds = random_seeds(n, c.k, rng);
        break;
      }
      ProbeParams params = probe_params_for(n, c.k, c.epsilon, c.delta);
      if (c.rho) params.rho = *c.rho;
      if (c.T) params.copies = *c.T;
      if (c.tau) params.tau = *c.tau;
      EdgeQueryOracle::Options options;
      options.edge_budget = c.edge_budget;
      EdgeQueryOracle oracle(graph, options);
      Rng probe_rng = rng.substream(1);
      Rng seed_rng = rng.substream(2);
      const Sketch sketch = probe(oracle, params, probe_rng);
      out.seeds = seed_from_sketch(sketch, c.k, c.eps_prime.value_or(default_eps_prime(c.epsilon)),
                                   seed_rng);
      out.seeds.query_cost = oracle.ledger().snapshot();
      out.queries = out.seeds.query_cost.edge_reveals();
      out.revealed_nodes = sketch.total_revealed_nodes();
      out.sketch_edges = sketch.total_kept_edges();
      break;
    }
    case Algorithm::kSpreadSeed:
    case Algorithm::kLtSpreadSeed: {
      std::size_t per_round = 0;
      if (c.spread_budget) {
        per_round = static_cast<std::size_t>(*c.spread_budget / c.k);
      } else if (c.rounds_rho) {
        per_round = *c.rounds_rho;
      } else {
        per_round = param_rho_spread(n, c.k, c.epsilon);
      }
      if (per_round == 0) {
        out.seeds = random_seeds(n, c.k, rng);
        break;
      }
      if (c.algorithm == Algorithm::kSpreadSeed) {
        if (lt != nullptr) throw ModelError("spread-seed runs on independent cascades only");
        SpreadQueryOracle oracle(graph);
        out.seeds = spread_seed(oracle, c.k, per_round, rng);
        out.queries = out.seeds.query_cost.spread_queries;
      } else {
        if (lt == nullptr) throw ModelError("lt-spread-seed needs model = lt");
        ReverseCascadeOracle oracle(*lt);
        out.seeds = lt_spread_seed(oracle, c.k, per_round, rng);
        out.queries = out.seeds.query_cost.reverse_queries;
      }
      break;
    }
    case Algorithm::kGreedy:
      if (lt != nullptr) {
        std::uint64_t evaluation = 0;
        out.seeds = lazy_greedy(n, c.k, [&](std::span<const NodeId> s) {
          if (s.empty()) return 0.0;
          Rng eval = rng.substream(evaluation++);
          return influence_mc_lt(*lt, s, c.greedy_sims, eval).mean;
        });
      } else {
        out.seeds = greedy_full(graph, c.k, c.greedy_sims, rng);
      }
      break;
    case Algorithm::kRandom:
      out.seeds = random_seeds(n, c.k, rng);
      break;
    case Algorithm::kOneHop: {
      NominationOracle oracle(graph);
      out.seeds = one_hop(oracle, c.k, rng);
      break;
    }
    case Algorithm::kDegree:
      out.seeds = top_degree(graph, c.k);
      break;
  }
  return out;
}

}  // namespace

double profit(double spread, std::size_t k, std::uint64_t queries, const ProfitParams& params) {
  if (spread < 0.0 || params.seed_cost < 0.0 || params.query_cost < 0.0 || params.revenue < 0.0) {
    throw ParameterError("profit inputs must be non-negative");
  }
  return params.revenue * spread - params.seed_cost * static_cast<double>(k) -
         params.query_cost * static_cast<double>(queries);
}

BoundValues edge_query_bound(std::size_t n, std::size_t k, double epsilon, double delta, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("p must lie in [0, 1]");
  BoundValues b;
  const ProbeParams params = probe_params_for(n, k, epsilon, delta);
  b.rho = params.rho;
  b.initial_nodes = params.initial_count(n);
  b.T = params.copies;
  b.tau = params.tau;
  const double tau = static_cast<double>(b.tau);
  const double T = static_cast<double>(b.T);
  const double nn = static_cast<double>(n);
  b.E = p * tau * (tau - 1.0) / 2.0;
  b.C = static_cast<double>(b.initial_nodes) * T *
        (b.E + std::sqrt(delta * (tau * std::log(nn) + std::log(T)) * b.E));
  b.bound = 2.0 * b.C + (2.0 + std::sqrt(2.0)) * T * nn * std::sqrt(delta + std::log(T));
  return b;
}

Algorithm parse_algorithm(const std::string& name) {
  static const std::map<std::string, Algorithm> names = {
      {"probe-seed", Algorithm::kProbeSeed}, {"spread-seed", Algorithm::kSpreadSeed},
      {"lt-spread-seed", Algorithm::kLtSpreadSeed}, {"greedy", Algorithm::kGreedy},
      {"random", Algorithm::kRandom}, {"one-hop", Algorithm::kOneHop},
      {"degree", Algorithm::kDegree}};
  auto it = names.find(name);
  if (it == names.end()) throw ParameterError("unknown algorithm '" + name + "'");
  return it->second;
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kProbeSeed: return "probe-seed";
    case Algorithm::kSpreadSeed: return "spread-seed";
    case Algorithm::kLtSpreadSeed: return "lt-spread-seed";
    case Algorithm::kGreedy: return "greedy";
    case Algorithm::kRandom: return "random";
    case Algorithm::kOneHop: return "one-hop";
    case Algorithm::kDegree: return "degree";
  }
  return "unknown";
}

void ExperimentConfig::validate() const {
  if (k < 1) throw ParameterError("k must be at least 1");
  if (repetitions < 1) throw ParameterError("repetitions must be at least 1");
  if (eval_sims < 1) throw ParameterError("eval_sims must be at least 1");
  if (greedy_sims < 1) throw ParameterError("greedy_sims must be at least 1");
  if (model != "ic" && model != "lt") throw ParameterError("model must be ic or lt");
  if (lt_weights != "uniform" && lt_weights != "random") {
    throw ParameterError("lt_weights must be uniform or random");
  }
  if (p && !(*p >= 0.0 && *p <= 1.0)) throw ParameterError("p must lie in [0, 1]");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ParameterError("epsilon must lie in (0, 1]");
  if (!(delta > 0.0)) throw ParameterError("delta must be positive");
  if (eps_prime && !(*eps_prime > 0.0 && *eps_prime < 1.0)) {
    throw ParameterError("eps_prime must lie in (0, 1)");
  }
  if (rho && !(*rho > 0.0 && *rho <= 1.0)) throw ParameterError("rho must lie in (0, 1]");
  if (tau && *tau < 1) throw ParameterError("tau must be at least 1");
  if (sweep.empty() != sweep_values.empty()) {
    throw ParameterError("sweep needs both a parameter and a list of values");
  }
  if (profit.seed_cost < 0.0 || profit.query_cost < 0.0 || profit.revenue < 0.0) {
    throw ParameterError("profit parameters must be non-negative");
  }
}

ExperimentConfig parse_experiment_config(std::istream& in) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(e.message(), e.line());
  }
  ExperimentConfig config;
  const auto& setters = config_setters();
  auto apply = [&](const std::string& key, const std::string& value) {
    auto it = setters.find(key);
    if (it == setters.end()) throw ParseError("unknown config key '" + key + "'");
    it->second(config, key, value);
  };
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      // Top-level keys may be written with their section prefix.
      apply(name, node.data());
      continue;
    }
    for (const auto& [key, leaf] : node) apply(name + "." + key, leaf.data());
  }
  config.validate();
  return config;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file '" + path + "'");
  try {
    return parse_experiment_config(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Graph build_graph(const GraphSource& s, std::optional<double> p) {
  Graph graph = [&] {
    if (!s.path.empty()) {
      LoadOptions options;
      options.directed = s.directed;
      return load_edge_list_file(s.path, options).graph;
    }
    const double q = p.value_or(1.0);
    if (s.generator == "er") return gen_erdos_renyi(s.n, s.edge_prob, s.seed, q);
    if (s.generator == "pa") return gen_preferential_attachment(s.n, s.m, s.seed, q);
    if (s.generator == "star") return gen_star(s.n, s.directed, q);
    if (s.generator == "clique-circle") return gen_clique_circle(s.n, s.mu, s.seed, q).graph;
    if (s.generator == "clique-isolated") {
      return gen_clique_plus_isolated(s.n, s.clique_size, s.seed, q);
    }
    throw ParameterError("unknown generator '" + s.generator + "'");
  }();
  if (p) graph = graph.with_uniform_prob(*p);
  if (s.directed && !graph.directed()) graph = graph.as_directed();
  return graph;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const Graph graph = build_graph(config.graph, config.p);
  return run_experiment(config, graph);
}

ExperimentResult run_experiment(const ExperimentConfig& config, const Graph& graph) {
  config.validate();
  std::optional<WeightedLTGraph> lt;
  if (config.model == "lt") {
    if (config.lt_weights == "random") {
      Rng weight_rng = Rng(config.rng_seed).substream(0x17);
      lt = random_lt_weights(graph, weight_rng);
    } else {
      lt = WeightedLTGraph::uniform_in_degree(graph);
    }
  }

  ExperimentResult result;
  result.sweep = config.sweep;
  const std::vector<double> points =
      config.sweep.empty() ? std::vector<double>{0.0} : config.sweep_values;
  const Rng root(config.rng_seed);
  for (std::size_t i = 0; i < points.size(); ++i) {
    ExperimentConfig c = config;
    std::string label;
    if (!config.sweep.empty()) {
      apply_sweep_value(c, config.sweep, points[i]);
      label = format_double(points[i]);
    }
    SweepSummary summary;
    summary.sweep_value = label;
    summary.repetitions = c.repetitions;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t r = 0; r < c.repetitions; ++r) {
      const Rng cell = root.substream(i + 1).substream(r);
      Rng algo_rng = cell.substream(0);
      Rng eval_rng = cell.substream(1);
      const auto start = std::chrono::steady_clock::now();
      Outcome out = run_algorithm(c, graph, lt ? &*lt : nullptr, algo_rng);
      const auto stop = std::chrono::steady_clock::now();
      const InfluenceEstimate est =
          lt ? influence_mc_lt(*lt, out.seeds.seeds, c.eval_sims, eval_rng)
             : influence_mc(graph, out.seeds.seeds, c.eval_sims, eval_rng);

      ExperimentRow row;
      row.sweep_value = label;
      row.repetition = r;
      row.algorithm = out.seeds.algorithm;
      row.k = c.k;
      row.seeds = out.seeds.seeds;
      row.spread = est.mean;
      row.spread_std_error = est.std_error;
      row.ledger = out.seeds.query_cost;
      row.queries = out.queries;
      row.revealed_nodes = out.revealed_nodes;
      row.sketch_edges = out.sketch_edges;
      row.objective = out.seeds.value;
      row.profit = profit(est.mean, c.k, out.queries, c.profit);
      row.wall_seconds = std::chrono::duration<double>(stop - start).count();

      sum += row.spread;
      sum_sq += row.spread * row.spread;
      summary.mean_queries += static_cast<double>(row.queries);
      summary.mean_profit += row.profit;
      summary.mean_wall_seconds += row.wall_seconds;
      result.rows.push_back(std::move(row));
    }
    const auto reps = static_cast<double>(c.repetitions);
    summary.mean_spread = sum / reps;
    if (c.repetitions > 1) {
      const double var = std::max(0.0, (sum_sq - sum * sum / reps) / (reps - 1.0));
      summary.std_error = std::sqrt(var / reps);
    }
    summary.ci_low = summary.mean_spread - 1.96 * summary.std_error;
    summary.ci_high = summary.mean_spread + 1.96 * summary.std_error;
    summary.mean_queries /= reps;
    summary.mean_profit /= reps;
    summary.mean_wall_seconds /= reps;
    result.summary.push_back(summary);
  }
  return result;
}

void write_experiment_csv(std::ostream& out, const ExperimentResult& result) {
  out << "#schema=" << kCsvSchema << '\n';
  out << "sweep,value,rep,algorithm,k,spread,spread_stderr,queries,kept_edges,discarded_edges,"
         "spread_queries,reverse_queries,nominations,revealed_nodes,sketch_edges,objective,"
         "profit,seeds\n";
  for (const auto& row : result.rows) {
    out << result.sweep << ',' << row.sweep_value << ',' << row.repetition << ','
        << row.algorithm << ',' << row.k << ',' << format_double(row.spread) << ','
        << format_double(row.spread_std_error) << ',' << row.queries << ','
        << row.ledger.kept_edges << ',' << row.ledger.discarded_edges << ','
        << row.ledger.spread_queries << ',' << row.ledger.reverse_queries << ','
        << row.ledger.nominations << ',' << row.revealed_nodes << ',' << row.sketch_edges << ','
        << (row.objective ? format_double(*row.objective) : std::string()) << ','
        << format_double(row.profit) << ',';
    for (std::size_t i = 0; i < row.seeds.size(); ++i) {
      if (i > 0) out << ' ';
      out << row.seeds[i];
    }
    out << '\n';
  }
}

void write_experiment_json(std::ostream& out, const ExperimentConfig& config,
                           const ExperimentResult& result) {
  using nlohmann::json;
  json doc;
  doc["schema"] = kCsvSchema;
  doc["algorithm"] = algorithm_name(config.algorithm);
  doc["sweep"] = result.sweep;
  doc["repetitions"] = config.repetitions;
  doc["eval_sims"] = config.eval_sims;
  doc["seed"] = config.rng_seed;
  json points = json::array();
  for (const auto& s : result.summary) {
    points.push_back({{"value", s.sweep_value},
                      {"mean_spread", s.mean_spread},
                      {"std_error", s.std_error},
                      {"ci95", {s.ci_low, s.ci_high}},
                      {"mean_queries", s.mean_queries},
                      {"mean_profit", s.mean_profit},
                      {"mean_wall_seconds", s.mean_wall_seconds}});
  }
  doc["points"] = std::move(points);
  out << doc.dump(2) << '\n';
}

}  // namespace seedq
