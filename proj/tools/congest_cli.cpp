// congest: generate graphs, run ruling-set algorithms, sweep experiments,
// verify outputs. Exit codes: 0 ok, 2 invalid output, 3 timeout, 4 config
// error, 5 I/O error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "congest/algorithms/registry.hpp"
#include "congest/graph_io.hpp"
#include "congest/lowerbound.hpp"
#include "congest/serialize.hpp"
#include "congest/verify.hpp"

namespace {

using congest::AlgoParams;
using json = nlohmann::ordered_json;

enum Exit : int { kOk = 0, kInvalid = 2, kTimeout = 3, kConfig = 4, kIo = 5 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t env_seed() {
  const char* text = std::getenv("CONGEST_SEED");
  if (text == nullptr || *text == '\0') return 1;
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(text, &pos);
    if (text[pos] == '\0') return v;
  } catch (const std::exception&) {
  }
  throw congest::InvalidParameter(std::string("CONGEST_SEED must be an unsigned integer, got '") + text + "'");
}

AlgoParams parse_pairs(const std::vector<std::string>& items) {
  AlgoParams out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw congest::InvalidParameter("expected key=value, got '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

// Accepts `family:k=v,...`, a path, or `family k=v ...` split into tokens.
congest::GraphFamilySpec parse_spec_tokens(const std::vector<std::string>& tokens, std::uint64_t seed) {
  if (tokens.empty()) throw congest::InvalidParameter("missing graph spec");
  if (tokens.size() == 1) return congest::parse_graph_spec(tokens[0], seed);
  std::string joined = tokens[0] + ":";
  for (std::size_t i = 1; i < tokens.size(); ++i) joined += (i > 1 ? "," : "") + tokens[i];
  return congest::parse_graph_spec(joined, seed);
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw IoError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void finish() {
    stream().flush();
    if (!stream()) throw IoError("write failed");
  }

 private:
  std::ofstream file_;
};

double log2n(std::size_t n) { return std::log2(static_cast<double>(std::max<std::size_t>(n, 2))); }

std::string num(double x) {
  if (!std::isfinite(x)) return "";
  std::ostringstream s;
  s.precision(10);
  s << x;
  return s.str();
}

// Options shared by run and experiment.
struct EngineFlags {
  std::optional<congest::Round> round_cap;
  std::optional<unsigned> max_words;
  bool audit = false;

  congest::RunOptions options(const congest::Graph& g, std::uint64_t seed) const {
    congest::RunOptions o;
    o.seed = seed;
    o.round_cap = round_cap.value_or(congest::default_round_cap(g.node_count()));
    o.budget = congest::WordBudget::for_graph(g, max_words.value_or(4));
    o.audit = audit;
    return o;
  }

  void add_to(CLI::App* app) {
    app->add_option("--round-cap", round_cap, "Round cap (default 64 n)")->check(CLI::PositiveNumber);
    app->add_option("--max-words", max_words, "Words per message (default 4)")->check(CLI::PositiveNumber);
    app->add_flag("--audit", audit, "Count oversize messages instead of aborting");
  }
};

json config_json(const congest::AlgorithmSpec& algo, const AlgoParams& params, const congest::RunOptions& o) {
  json c;
  c["algorithm"] = algo.name;
  c["params"] = json::object();
  for (const auto& [k, v] : params) c["params"][k] = v;
  c["seed"] = o.seed;
  c["round_cap"] = *o.round_cap;
  c["max_words"] = o.budget->max_words;
  c["word_bits"] = o.budget->word_bits;
  c["audit"] = o.audit;
  return c;
}

struct RunRecord {
  json record;
  bool valid = false;
  bool timed_out = false;
};

RunRecord run_once(const congest::AlgorithmSpec& algo, const AlgoParams& params, const congest::Graph& g,
                   const congest::RunOptions& opts) {
  const auto out = algo.run(g, params, opts);
  const auto [alpha, beta] = algo.bounds(params);
  const auto report = congest::verify_ruling_set(g, out.in_set, alpha, beta);
  RunRecord r;
  r.timed_out = out.stats.timed_out;
  r.valid = report.valid && out.stats.complete();
  json& j = r.record;
  j["n"] = g.node_count();
  j["m"] = g.edge_count();
  j["max_degree"] = g.max_degree();
  j["alpha"] = alpha;
  j["beta"] = beta == congest::kUnbounded ? json(nullptr) : json(beta);
  j["valid"] = r.valid;
  j["timeout"] = out.stats.timed_out;
  j["rounds"] = out.stats.rounds;
  j["messages_total"] = out.stats.messages_total;
  j["set_size"] = congest::members(out.in_set).size();
  j["achieved_beta"] = report.achieved_beta == congest::kUnreachable ? json(nullptr) : json(report.achieved_beta);
  j["verification"] = congest::report_to_json(report);
  j["stats"] = congest::stats_to_json(out.stats, false);
  j["info"] = congest::instrumentation_to_json(out.info);
  return r;
}

int exit_for(bool any_invalid, bool any_timeout) {
  if (any_timeout) return kTimeout;
  if (any_invalid) return kInvalid;
  return kOk;
}

// ---- gen ----

struct GenCmd {
  std::vector<std::string> spec;
  std::string out;
  std::uint64_t seed = 1;

  int operator()() const {
    const auto fs = parse_spec_tokens(spec, seed);
    const auto g = congest::make_graph(fs);
    if (out.empty() || out == "-") {
      congest::write_edge_list(g, std::cout);
      std::cerr << "n=" << g.node_count() << " m=" << g.edge_count() << " max_degree=" << g.max_degree() << "\n";
    } else {
      try {
        congest::save_edge_list(g, out);
      } catch (const congest::GraphError& e) {
        throw IoError(e.what());
      }
      std::cout << "n=" << g.node_count() << " m=" << g.edge_count() << " max_degree=" << g.max_degree() << "\n";
    }
    return kOk;
  }
};

// ---- run ----

struct RunCmd {
  std::string algorithm;
  std::string graph;
  std::vector<std::string> params;
  std::uint64_t seed = 1;
  std::string out;
  EngineFlags engine;

  int operator()() const {
    const auto& algo = congest::find_algorithm(algorithm);
    const auto resolved = congest::resolve_params(algo, parse_pairs(params));
    const auto fs = congest::parse_graph_spec(graph, seed);
    const auto g = congest::make_graph(fs);
    const auto opts = engine.options(g, seed);
    auto rec = run_once(algo, resolved, g, opts);
    json j;
    j["config"] = config_json(algo, resolved, opts);
    j["config"]["graph"] = congest::format_graph_spec(fs);
    for (auto& [k, v] : rec.record.items()) j[k] = v;
    Output o(out);
    o.stream() << j.dump(2) << "\n";
    o.finish();
    return exit_for(!rec.valid, rec.timed_out);
  }
};

// ---- experiment sweep ----

const std::vector<std::string> kSweepColumns = {
    "row",      "algo",  "n",     "m",     "max_degree",       "seed",           "graph_seed",
    "rounds",   "messages", "valid", "timeout", "achieved_beta", "rounds_per_log2n", "messages_per_nlog2sq",
    "messages_per_m"};

struct SweepCmd {
  std::string algorithm;
  std::string graph;  // family template; n is filled from --sizes
  std::vector<std::size_t> sizes;
  std::vector<std::string> params;
  std::vector<std::uint64_t> seeds;
  std::uint64_t seed = 1;
  std::size_t trials = 10;
  std::string out;
  std::string format = "csv";
  EngineFlags engine;

  int operator()() const {
    const auto& algo = congest::find_algorithm(algorithm);
    const auto resolved = congest::resolve_params(algo, parse_pairs(params));
    if (sizes.empty()) throw congest::InvalidParameter("--sizes needs at least one size");
    for (std::size_t i = 1; i < sizes.size(); ++i) {
      if (sizes[i] <= sizes[i - 1]) throw congest::InvalidParameter("--sizes must be strictly increasing");
    }
    std::vector<std::uint64_t> run_seeds = seeds;
    if (run_seeds.empty()) {
      if (trials == 0) throw congest::InvalidParameter("--trials must be at least 1");
      for (std::size_t t = 0; t < trials; ++t) run_seeds.push_back(seed + t);
    }
    const auto base = congest::parse_graph_spec(graph, 0);
    const bool fixed_graph_seed = graph.find("seed=") != std::string::npos;

    json rows = json::array();
    json aggregates = json::array();
    bool any_invalid = false;
    bool any_timeout = false;
    json config;
    for (const std::size_t n : sizes) {
      std::vector<double> rounds, messages, per_m, r_norm, m_norm;
      for (const auto s : run_seeds) {
        auto fs = base;
        fs.params[fs.family == congest::GraphFamily::kStar ? "leaves" : "n"] = std::to_string(n);
        if (!fixed_graph_seed) fs.seed = congest::derive_seed(s, 0x67);
        const auto g = congest::make_graph(fs);
        const auto opts = engine.options(g, s);
        if (config.is_null()) {
          config = config_json(algo, resolved, opts);
          config.erase("seed");
          config.erase("round_cap");
          config.erase("word_bits");
          config["graph"] = graph;
          config["sizes"] = sizes;
          config["seeds"] = run_seeds;
          config["round_cap"] = engine.round_cap ? json(*engine.round_cap) : json("64n");
        }
        json row;
        try {
          const auto rec = run_once(algo, resolved, g, opts);
          const auto& j = rec.record;
          row = {{"row", "run"},
                 {"algo", algo.name},
                 {"n", g.node_count()},
                 {"m", g.edge_count()},
                 {"max_degree", g.max_degree()},
                 {"seed", s},
                 {"graph_seed", fs.seed},
                 {"rounds", j["rounds"]},
                 {"messages", j["messages_total"]},
                 {"valid", rec.valid},
                 {"timeout", rec.timed_out},
                 {"achieved_beta", j["achieved_beta"]}};
          const double r = j["rounds"].get<double>();
          const double msg = j["messages_total"].get<double>();
          const double l = log2n(g.node_count());
          row["rounds_per_log2n"] = r / l;
          row["messages_per_nlog2sq"] = msg / (static_cast<double>(std::max<std::size_t>(g.node_count(), 1)) * l * l);
          row["messages_per_m"] = g.edge_count() ? json(msg / static_cast<double>(g.edge_count())) : json(nullptr);
          rounds.push_back(r);
          messages.push_back(msg);
          r_norm.push_back(r / l);
          m_norm.push_back(row["messages_per_nlog2sq"].get<double>());
          if (g.edge_count()) per_m.push_back(msg / static_cast<double>(g.edge_count()));
          any_invalid = any_invalid || !rec.valid;
          any_timeout = any_timeout || rec.timed_out;
        } catch (const congest::BudgetViolation& e) {
          row = {{"row", "run"}, {"algo", algo.name}, {"n", g.node_count()}, {"m", g.edge_count()},
                 {"max_degree", g.max_degree()}, {"seed", s}, {"graph_seed", fs.seed}, {"valid", false},
                 {"error", e.what()}};
          any_invalid = true;
        }
        rows.push_back(std::move(row));
      }
      const auto rs = congest::summarize(rounds);
      const auto ms = congest::summarize(messages);
      json agg;
      agg["n"] = n;
      agg["runs"] = run_seeds.size();
      agg["rounds"] = {{"mean", rs.mean}, {"median", rs.median}, {"max", rs.max}};
      agg["messages"] = {{"mean", ms.mean}, {"median", ms.median}, {"max", ms.max}};
      agg["rounds_per_log2n_median"] = congest::summarize(r_norm).median;
      agg["messages_per_nlog2sq_median"] = congest::summarize(m_norm).median;
      agg["messages_per_m_median"] = per_m.empty() ? json(nullptr) : json(congest::summarize(per_m).median);
      aggregates.push_back(std::move(agg));
    }

    Output o(out);
    if (format == "json") {
      json j;
      j["config"] = config;
      j["rows"] = rows;
      j["aggregates"] = aggregates;
      o.stream() << j.dump(2) << "\n";
    } else {
      write_csv(o.stream(), rows, aggregates);
    }
    o.finish();
    return exit_for(any_invalid, any_timeout);
  }

  void write_csv(std::ostream& os, const json& rows, const json& aggregates) const {
    auto cell = [](const json& v) -> std::string {
      if (v.is_null()) return "";
      if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number_float()) return num(v.get<double>());
      return v.dump();
    };
    for (std::size_t i = 0; i < kSweepColumns.size(); ++i) os << (i ? "," : "") << kSweepColumns[i];
    os << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < kSweepColumns.size(); ++i) {
        os << (i ? "," : "") << (row.contains(kSweepColumns[i]) ? cell(row[kSweepColumns[i]]) : "");
      }
      os << "\n";
    }
    // Aggregate rows reuse the run columns; seed-specific cells stay empty.
    for (const auto& agg : aggregates) {
      for (const char* stat : {"median", "max"}) {
        const bool med = std::string(stat) == "median";
        os << stat << "," << algorithm << "," << agg["n"].get<std::size_t>() << ",,,,,"
           << num(agg["rounds"][stat].get<double>()) << "," << num(agg["messages"][stat].get<double>()) << ",,,,"
           << (med ? num(agg["rounds_per_log2n_median"].get<double>()) : "") << ","
           << (med ? num(agg["messages_per_nlog2sq_median"].get<double>()) : "") << ","
           << (med ? cell(agg["messages_per_m_median"]) : "") << "\n";
      }
    }
  }
};

// ---- experiment bridge ----

struct BridgeCmd {
  std::string algorithm = "2rs-msg";
  std::vector<std::string> params;
  std::vector<std::size_t> sizes = {64};
  std::optional<std::uint64_t> mu;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::string kind = "bridge";
  bool exchangeable = false;
  bool per_trial = false;
  std::optional<congest::Round> round_cap;
  std::string out;
  std::string format = "csv";

  int operator()() const {
    if (kind != "bridge" && kind != "disconnected") {
      throw congest::InvalidParameter("--graph-kind must be 'bridge' or 'disconnected'");
    }
    json results = json::array();
    for (const auto n : sizes) {
      congest::BridgeExperimentConfig c;
      c.n = n;
      c.algorithm = algorithm;
      c.params = parse_pairs(params);
      c.mu = mu;
      c.trials = trials;
      c.seed = seed;
      c.kind = kind == "bridge" ? congest::FixtureKind::kBridge : congest::FixtureKind::kDisconnected;
      c.exchangeable_seeding = exchangeable;
      c.round_cap = round_cap;
      const auto r = congest::bridge_experiment(c);
      auto j = congest::bridge_result_to_json(r, per_trial);
      j["params"] = json::object();
      for (const auto& [k, v] : congest::resolve_params(congest::find_algorithm(algorithm), c.params)) {
        j["params"][k] = v;
      }
      results.push_back(std::move(j));
    }
    Output o(out);
    if (format == "json") {
      o.stream() << results.dump(2) << "\n";
    } else {
      const std::vector<std::string> cols = {"n",        "algo",     "mu",       "trials",       "seed",
                                             "graph",    "crossing_rate", "predicted_rate", "hist_LLp", "hist_LRp",
                                             "hist_RLp", "hist_RRp", "hist_invalid", "hist_incomplete"};
      for (std::size_t i = 0; i < cols.size(); ++i) o.stream() << (i ? "," : "") << cols[i];
      o.stream() << "\n";
      for (const auto& j : results) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
          const auto& v = j[cols[i]];
          o.stream() << (i ? "," : "");
          if (v.is_null()) continue;
          if (v.is_string()) o.stream() << v.get<std::string>();
          else if (v.is_number_float()) o.stream() << num(v.get<double>());
          else o.stream() << v.dump();
        }
        o.stream() << "\n";
      }
    }
    o.finish();
    return kOk;
  }
};

// ---- verify ----

struct VerifyCmd {
  std::string graph;
  std::string set_file;
  unsigned alpha = 2;
  unsigned beta = 1;
  std::string out;

  std::vector<congest::NodeIndex> read_set(const congest::Graph& g) const {
    std::ifstream in(set_file);
    if (!in) throw IoError("cannot open set file '" + set_file + "'");
    std::vector<congest::NodeIndex> set;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      std::istringstream ls(line);
      std::string token;
      if (!(ls >> token)) continue;
      std::string extra;
      std::size_t pos = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(token, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != token.size() || token[0] == '-' || (ls >> extra)) {
        throw IoError(set_file + ":" + std::to_string(line_no) + ": expected one node index per line");
      }
      if (v >= g.node_count()) {
        throw IoError(set_file + ":" + std::to_string(line_no) + ": node " + token + " outside the graph");
      }
      set.push_back(static_cast<congest::NodeIndex>(v));
    }
    return set;
  }

  int operator()() const {
    if (alpha < 1 || beta < 1) throw congest::InvalidParameter("alpha and beta must be at least 1");
    const auto g = congest::make_graph(congest::parse_graph_spec(graph, env_seed()));
    const auto set = read_set(g);
    try {
      congest::check_node_set(g, set);
    } catch (const std::invalid_argument& e) {
      throw IoError(e.what());
    }
    const auto report = congest::verify_ruling_set(g, std::span<const congest::NodeIndex>(set), alpha, beta);
    json j;
    j["graph"] = graph;
    j["set_size"] = set.size();
    j["alpha"] = alpha;
    j["beta"] = beta;
    const json verdict = congest::report_to_json(report);
    for (const auto& [k, v] : verdict.items()) j[k] = v;
    Output o(out);
    o.stream() << j.dump(2) << "\n";
    o.finish();
    return report.valid ? kOk : kInvalid;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulate CONGEST ruling-set algorithms"};
  app.require_subcommand(1);
  std::uint64_t default_seed = 1;
  try {
    default_seed = env_seed();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  }

  GenCmd gen;
  gen.seed = default_seed;
  auto* gen_app = app.add_subcommand("gen", "Generate a graph and write its edge list");
  gen_app->add_option("spec", gen.spec, "family key=value ... or family:key=value,...")->required();
  gen_app->add_option("--out,-o", gen.out, "Output file (default stdout)");
  gen_app->add_option("--seed", gen.seed, "Seed unless the spec sets one (env CONGEST_SEED)");

  RunCmd runc;
  runc.seed = default_seed;
  auto* run_app = app.add_subcommand("run", "Run one algorithm once and verify its output");
  run_app->add_option("algorithm", runc.algorithm)->required();
  run_app->add_option("--graph,-g", runc.graph, "Inline spec family:key=value,... or edge-list path")->required();
  run_app->add_option("--param,-p", runc.params, "Algorithm parameter key=value (repeatable)");
  run_app->add_option("--seed", runc.seed, "Run seed; also the graph seed unless the spec sets one");
  run_app->add_option("--out,-o", runc.out, "Output file (default stdout)");
  runc.engine.add_to(run_app);

  auto* exp_app = app.add_subcommand("experiment", "Sweeps and the bridge experiment");
  exp_app->require_subcommand(1);

  SweepCmd sweep;
  sweep.seed = default_seed;
  auto* sweep_app = exp_app->add_subcommand("sweep", "Run an algorithm over graph sizes and seeds");
  sweep_app->add_option("algorithm", sweep.algorithm)->required();
  sweep_app->add_option("--graph,-g", sweep.graph, "Family template without n, e.g. gnp:p=0.5")->required();
  sweep_app->add_option("--sizes", sweep.sizes, "Strictly increasing sizes")->delimiter(',')->required();
  sweep_app->add_option("--param,-p", sweep.params, "Algorithm parameter key=value (repeatable)");
  sweep_app->add_option("--seeds", sweep.seeds, "Explicit seed list")->delimiter(',');
  sweep_app->add_option("--seed", sweep.seed, "Base seed; runs use seed, seed+1, ...");
  sweep_app->add_option("--trials", sweep.trials, "Seeds per size");
  sweep_app->add_option("--out,-o", sweep.out, "Output file (default stdout)");
  sweep_app->add_option("--format", sweep.format)->check(CLI::IsMember({"json", "csv"}));
  sweep.engine.add_to(sweep_app);

  BridgeCmd bridge;
  bridge.seed = default_seed;
  auto* bridge_app = exp_app->add_subcommand("bridge", "Bridge-crossing experiment on B(n) or D(n)");
  bridge_app->add_option("algorithm", bridge.algorithm, "Algorithm (default 2rs-msg)");
  bridge_app->add_option("--param,-p", bridge.params, "Algorithm parameter key=value (repeatable)");
  bridge_app->add_option("--n,--sizes", bridge.sizes, "Graph sizes, multiples of 4")->delimiter(',');
  bridge_app->add_option("--mu", bridge.mu, "Message budget (default unbudgeted)");
  bridge_app->add_option("--trials", bridge.trials);
  bridge_app->add_option("--seed", bridge.seed);
  bridge_app->add_option("--graph-kind", bridge.kind, "bridge or disconnected");
  bridge_app->add_flag("--exchangeable", bridge.exchangeable, "Component-exchangeable node seeding");
  bridge_app->add_flag("--per-trial", bridge.per_trial, "Include per-trial records (json)");
  bridge_app->add_option("--round-cap", bridge.round_cap)->check(CLI::PositiveNumber);
  bridge_app->add_option("--out,-o", bridge.out);
  bridge_app->add_option("--format", bridge.format)->check(CLI::IsMember({"json", "csv"}));

  VerifyCmd verify;
  auto* verify_app = app.add_subcommand("verify", "Check an (alpha, beta)-ruling set");
  verify_app->add_option("graph", verify.graph, "Edge-list file or inline spec")->required();
  verify_app->add_option("set", verify.set_file, "File with one node index per line")->required();
  verify_app->add_option("--alpha", verify.alpha);
  verify_app->add_option("--beta", verify.beta);
  verify_app->add_option("--out,-o", verify.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*gen_app) return gen();
    if (*run_app) return runc();
    if (*sweep_app) return sweep();
    if (*bridge_app) return bridge();
    if (*verify_app) return verify();
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const congest::GraphError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const congest::BudgetViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  }
  return kConfig;
}
