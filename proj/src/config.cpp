#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sobandit/bounds.hpp"
#include "sobandit/cli.hpp"
#include "sobandit/harness.hpp"
#include "sobandit/text.hpp"

namespace sobandit {

namespace {

std::uint64_t parse_u64(const std::string& token, const std::string& what) {
  try {
    std::size_t used = 0;
    const unsigned long long value = std::stoull(token, &used);
    if (used != token.size()) {
      throw std::invalid_argument(what);
    }
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid " + what + ": \"" + token + "\"");
  }
}

double parse_double_token(const std::string& token, const std::string& what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(token, &used);
    if (used != token.size()) {
      throw std::invalid_argument(what);
    }
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid " + what + ": \"" + token + "\"");
  }
}

// Trailing "seedN" token shared by generator specs; absent means seed 0.
std::uint64_t parse_seed_token(const std::string& token) {
  if (token.rfind("seed", 0) != 0) {
    throw std::invalid_argument("expected seedN, got \"" + token + "\"");
  }
  return parse_u64(token.substr(4), "seed");
}

}  // namespace

GraphGenSpec parse_graph_spec(const std::string& text) {
  const std::vector<std::string> parts = split(text, ':');
  GraphGenSpec spec;
  const std::string& kind = parts[0];
  auto expect_parts = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() < lo || parts.size() > hi) {
      throw std::invalid_argument("malformed graph spec \"" + text + "\"");
    }
  };
  if (kind == "complete" || kind == "star" || kind == "path") {
    expect_parts(2, 2);
    spec.kind = kind == "complete" ? GraphKind::Complete
                : kind == "star"   ? GraphKind::Star
                                   : GraphKind::Path;
    spec.num_arms = parse_u64(parts[1], "arm count");
  } else if (kind == "erdos_renyi") {
    expect_parts(3, 4);
    spec.kind = GraphKind::ErdosRenyi;
    spec.num_arms = parse_u64(parts[1], "arm count");
    spec.edge_prob = parse_double_token(parts[2], "edge probability");
    if (parts.size() == 4) {
      spec.seed = parse_seed_token(parts[3]);
    }
  } else if (kind == "preferential_attachment") {
    expect_parts(3, 4);
    spec.kind = GraphKind::PreferentialAttachment;
    spec.num_arms = parse_u64(parts[1], "arm count");
    spec.attach_degree = parse_u64(parts[2], "attach degree");
    if (parts.size() == 4) {
      spec.seed = parse_seed_token(parts[3]);
    }
  } else {
    throw std::invalid_argument(
        "unknown graph kind \"" + kind +
        "\" (expected complete, star, path, erdos_renyi, "
        "preferential_attachment)");
  }
  if (spec.num_arms == 0) {
    throw std::invalid_argument("graph spec needs at least one arm");
  }
  return spec;
}

void parse_means_spec(const std::string& text, ExperimentConfig& config) {
  config.means_rule.reset();
  config.ratings_rule.reset();
  config.means_path.reset();
  if (text.rfind("uniform:", 0) == 0) {
    const std::vector<std::string> parts = split(text, ':');
    if (parts.size() < 3 || parts.size() > 4) {
      throw std::invalid_argument("malformed means rule \"" + text +
                                  "\" (expected uniform:LO:HI[:seedN])");
    }
    UniformMeansRule rule;
    rule.lo = parse_double_token(parts[1], "means lower bound");
    rule.hi = parse_double_token(parts[2], "means upper bound");
    if (parts.size() == 4) {
      rule.seed = parse_seed_token(parts[3]);
    }
    config.means_rule = rule;
  } else if (text.rfind("ratings:", 0) == 0) {
    const std::vector<std::string> parts = split(text, ':');
    if (parts.size() < 2 || parts.size() > 3 || parts[1].empty()) {
      throw std::invalid_argument("malformed means rule \"" + text +
                                  "\" (expected ratings:PATH[:THRESHOLD])");
    }
    RatingsMeansRule rule;
    rule.path = parts[1];
    if (parts.size() == 3) {
      rule.threshold = parse_double_token(parts[2], "ratings threshold");
    }
    config.ratings_rule = rule;
  } else {
    config.means_path = text;
  }
}

namespace {

// Raw option values; resolved into an ExperimentConfig after parsing.
struct RunOptions {
  std::string graph;
  std::string edge_list;
  std::string means;
  std::vector<std::string> policies;
  std::uint64_t horizon = 1000;
  std::size_t runs = 100;
  std::uint64_t seed = 0;
  double cover_fraction = 1.0;
  std::string output;
  std::size_t parallelism = 1;
  double epsilon_c = 5.0;
  double epsilon_d = 1.0;
  bool dump_full = false;
};

void add_run_options(CLI::App& app, RunOptions& opts) {
  app.add_option("--graph", opts.graph,
                 "generator spec: complete:K | star:K | path:K | "
                 "erdos_renyi:K:P[:seedN] | "
                 "preferential_attachment:K:M[:seedN]");
  app.add_option("--edge-list", opts.edge_list,
                 "edge-list file (\"K M\" header)");
  app.add_option("--means", opts.means,
                 "means file, uniform:LO:HI[:seedN], or "
                 "ratings:PATH[:THRESHOLD]");
  app.add_option("--policy", opts.policies,
                 "policy to run (repeatable): ucb1, ucb-n, ucb-maxn, "
                 "ucb1-on-cliques, epsilon-greedy; default all");
  app.add_option("--horizon", opts.horizon, "rounds per run")
      ->capture_default_str();
  app.add_option("--runs", opts.runs, "independent runs per policy")
      ->capture_default_str();
  app.add_option("--seed", opts.seed, "base seed; run r uses seed + r")
      ->capture_default_str();
  app.add_option("--cover-fraction", opts.cover_fraction,
                 "stop the greedy cover after this fraction of arms")
      ->capture_default_str();
  app.add_option("--output", opts.output, "CSV output path (default stdout)");
  app.add_option("--parallelism", opts.parallelism,
                 "worker threads across runs")
      ->capture_default_str();
  app.add_option("--epsilon-c", opts.epsilon_c, "epsilon-greedy c")
      ->capture_default_str();
  app.add_option("--epsilon-d", opts.epsilon_d, "epsilon-greedy d")
      ->capture_default_str();
  app.add_flag("--dump-full", opts.dump_full,
               "checkpoint every step instead of log spacing");
  app.set_config("--config", "", "read options from a config file");
}

ExperimentConfig build_config(const RunOptions& opts) {
  ExperimentConfig config;
  if (opts.graph.empty() == opts.edge_list.empty()) {
    throw std::invalid_argument(
        "exactly one of --graph and --edge-list is required");
  }
  if (!opts.graph.empty()) {
    config.graph_gen = parse_graph_spec(opts.graph);
  } else {
    config.edge_list_path = opts.edge_list;
  }
  if (opts.means.empty()) {
    throw std::invalid_argument("--means is required");
  }
  parse_means_spec(opts.means, config);
  if (opts.horizon == 0 || opts.runs == 0 || opts.parallelism == 0) {
    throw std::invalid_argument("--horizon, --runs, --parallelism must be >= 1");
  }
  if (!(opts.cover_fraction > 0.0) || opts.cover_fraction > 1.0) {
    throw std::invalid_argument("--cover-fraction must lie in (0, 1]");
  }
  if (!(opts.epsilon_c > 0.0) || !(opts.epsilon_d > 0.0)) {
    throw std::invalid_argument("--epsilon-c and --epsilon-d must be > 0");
  }
  std::vector<PolicyKind> kinds;
  if (opts.policies.empty()) {
    kinds = {PolicyKind::Ucb1, PolicyKind::Ucb1OnCliques, PolicyKind::UcbN,
             PolicyKind::UcbMaxN, PolicyKind::EpsilonGreedy};
  } else {
    for (const std::string& name : opts.policies) {
      kinds.push_back(parse_policy_name(name));
    }
  }
  for (PolicyKind kind : kinds) {
    PolicySpec spec;
    spec.kind = kind;
    spec.epsilon.c = opts.epsilon_c;
    spec.epsilon.d = opts.epsilon_d;
    config.policies.push_back(spec);
  }
  config.horizon = opts.horizon;
  config.num_runs = opts.runs;
  config.base_seed = opts.seed;
  config.cover_fraction = opts.cover_fraction;
  config.output_path = opts.output;
  config.parallelism = opts.parallelism;
  config.dump_full = opts.dump_full;
  return config;
}

SOGraph graph_from_options(const std::string& graph,
                           const std::string& edge_list) {
  if (graph.empty() == edge_list.empty()) {
    throw std::invalid_argument(
        "exactly one of --graph and --edge-list is required");
  }
  if (!graph.empty()) {
    return generate_graph(parse_graph_spec(graph));
  }
  return load_edge_list(edge_list);
}

int command_run(const RunOptions& opts) {
  const ExperimentConfig config = build_config(opts);
  const ExperimentResult result = run_experiment(config);
  if (config.output_path.empty()) {
    write_csv(result, std::cout);
  } else {
    write_csv(result, config.output_path);
  }
  std::cerr << "arms (after cover restriction): " << result.num_arms
            << ", cliques: " << result.cover_info.num_cliques
            << ", avg cliques per arm: "
            << format_real(result.cover_info.avg_cliques_per_arm) << '\n';
  for (const SpeedupEntry& entry : result.speedups.entries) {
    std::cerr << "speedup " << entry.policy << ": " << format_real(entry.k)
              << "x\n";
  }
  return 0;
}

struct CoverOptions {
  std::string graph;
  std::string edge_list;
  double cover_fraction = 1.0;
  std::string output;
};

int command_cover(const CoverOptions& opts) {
  if (!(opts.cover_fraction > 0.0) || opts.cover_fraction > 1.0) {
    throw std::invalid_argument("--cover-fraction must lie in (0, 1]");
  }
  const SOGraph graph = graph_from_options(opts.graph, opts.edge_list);
  const CliqueCover cover = greedy_clique_cover(graph, opts.cover_fraction);
  if (opts.output.empty()) {
    write_cover(cover, std::cout);
  } else {
    std::ofstream out(opts.output);
    if (!out) {
      throw std::runtime_error("cannot open output file: " + opts.output);
    }
    write_cover(cover, out);
  }
  const CoverStats stats = cover_stats(cover);
  std::cerr << "cliques: " << stats.num_cliques
            << ", covered arms: " << cover.covered.size() << " of "
            << graph.num_arms()
            << ", avg cliques per arm: " << format_real(stats.avg_cliques_per_arm)
            << '\n';
  return 0;
}

struct BoundsOptions {
  std::string graph;
  std::string edge_list;
  std::string means;
  std::uint64_t horizon = 10000;
  std::string output;
};

int command_bounds(const BoundsOptions& opts) {
  const SOGraph graph = graph_from_options(opts.graph, opts.edge_list);
  if (opts.means.empty()) {
    throw std::invalid_argument("--means is required");
  }
  ExperimentConfig means_holder;
  parse_means_spec(opts.means, means_holder);
  std::vector<double> means;
  if (means_holder.means_rule) {
    const UniformMeansRule& rule = *means_holder.means_rule;
    RandomStream rng(rule.seed, kMeansStream);
    for (std::size_t i = 0; i < graph.num_arms(); ++i) {
      means.push_back(rng.uniform(rule.lo, rule.hi));
    }
  } else if (means_holder.ratings_rule) {
    means = means_from_ratings(load_ratings(means_holder.ratings_rule->path),
                               means_holder.ratings_rule->threshold);
  } else {
    means = load_means(*means_holder.means_path);
  }
  if (means.size() != graph.num_arms()) {
    throw std::invalid_argument("means count does not match graph arm count");
  }
  const GapProfile gaps = gap_profile_from_means(means);
  const CliqueCover trivial = trivial_cover(graph.num_arms());
  const CliqueCover greedy = greedy_clique_cover(graph, 1.0);
  const std::uint64_t n = opts.horizon;
  const std::vector<BoundReportRow> rows = {
      {"ucb1", "-", ucb1_regret_bound(gaps, n)},
      {"thm2", "trivial", clique_cover_bound_thm2(gaps, trivial, n)},
      {"thm2", "greedy", clique_cover_bound_thm2(gaps, greedy, n)},
      {"thm3", "trivial", clique_cover_bound_thm3(gaps, trivial, n)},
      {"thm3", "greedy", clique_cover_bound_thm3(gaps, greedy, n)},
  };
  if (opts.output.empty()) {
    write_bound_reports_csv(std::cout, rows);
  } else {
    std::ofstream out(opts.output);
    if (!out) {
      throw std::runtime_error("cannot open output file: " + opts.output);
    }
    write_bound_reports_csv(out, rows);
  }
  return 0;
}

}  // namespace

// Each subcommand parses with its own top-level CLI::App: CLI11 only
// applies --config files on a top-level app, and the run command relies on
// the flags-override-file behavior.
int dispatch(CLI::App& app, const std::vector<std::string>& args,
             const std::function<int()>& body) {
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& err) {
    return app.exit(err);
  }
  try {
    return body();
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
}

int run_main(const std::vector<std::string>& args) {
  CLI::App app{"run a Monte-Carlo experiment and write regret curves as CSV",
               "sobandit run"};
  RunOptions opts;
  add_run_options(app, opts);
  return dispatch(app, args, [&] { return command_run(opts); });
}

int cover_main(const std::vector<std::string>& args) {
  CLI::App app{"compute and export a greedy clique cover", "sobandit cover"};
  CoverOptions opts;
  app.add_option("--graph", opts.graph, "generator spec");
  app.add_option("--edge-list", opts.edge_list, "edge-list file");
  app.add_option("--cover-fraction", opts.cover_fraction,
                 "fraction of arms to cover")
      ->capture_default_str();
  app.add_option("--output", opts.output, "cover output path (default stdout)");
  return dispatch(app, args, [&] { return command_cover(opts); });
}

int bounds_main(const std::vector<std::string>& args) {
  CLI::App app{"evaluate the closed-form regret bounds as CSV",
               "sobandit bounds"};
  BoundsOptions opts;
  app.add_option("--graph", opts.graph, "generator spec");
  app.add_option("--edge-list", opts.edge_list, "edge-list file");
  app.add_option("--means", opts.means, "means spec");
  app.add_option("--horizon", opts.horizon, "bound horizon n")
      ->capture_default_str();
  app.add_option("--output", opts.output, "CSV output path (default stdout)");
  return dispatch(app, args, [&] { return command_bounds(opts); });
}

void print_usage(std::ostream& out) {
  out << "Stochastic multi-armed bandits with side observations.\n"
         "Usage: sobandit SUBCOMMAND [OPTIONS]\n\n"
         "Subcommands:\n"
         "  run     run a Monte-Carlo experiment and write regret curves as "
         "CSV\n"
         "  cover   compute and export a greedy clique cover\n"
         "  bounds  evaluate the closed-form regret bounds as CSV\n\n"
         "Run \"sobandit SUBCOMMAND --help\" for the subcommand's options.\n";
}

}  // namespace

ExperimentConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"side-observation bandit experiment"};
  RunOptions opts;
  add_run_options(app, opts);
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& err) {
    throw std::invalid_argument(err.what());
  }
  return build_config(opts);
}

int cli_main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] == "-h" || args[0] == "--help") {
    print_usage(std::cout);
    return args.empty() ? 1 : 0;
  }
  const std::vector<std::string> rest(args.begin() + 1, args.end());
  if (args[0] == "run") {
    return run_main(rest);
  }
  if (args[0] == "cover") {
    return cover_main(rest);
  }
  if (args[0] == "bounds") {
    return bounds_main(rest);
  }
  std::cerr << "error: unknown subcommand \"" << args[0] << "\"\n";
  print_usage(std::cerr);
  return 1;
}

}  // namespace sobandit
