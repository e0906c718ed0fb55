#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sobandit/environment.hpp"
#include "sobandit/graph.hpp"
#include "sobandit/policies.hpp"

namespace sobandit {

enum class PolicyKind { Ucb1, UcbN, UcbMaxN, Ucb1OnCliques, EpsilonGreedy };

struct PolicySpec {
  PolicyKind kind = PolicyKind::Ucb1;
  EpsilonGreedyConfig epsilon;  // used by EpsilonGreedy only
};

// CLI names: ucb1, ucb-n, ucb-maxn, ucb1-on-cliques, epsilon-greedy.
std::string policy_name(PolicyKind kind);
PolicyKind parse_policy_name(const std::string& name);

// Synthetic means rule: per-arm means i.i.d. uniform on [lo, hi].
struct UniformMeansRule {
  double lo = 0.0;
  double hi = 1.0;
  std::uint64_t seed = 0;
};

// Means derived from a ratings file via means_from_ratings.
struct RatingsMeansRule {
  std::string path;
  double threshold = 3.5;
};

struct ExperimentConfig {
  // Exactly one graph source.
  std::optional<GraphGenSpec> graph_gen;
  std::optional<std::string> edge_list_path;

  // Exactly one means source.
  std::optional<UniformMeansRule> means_rule;
  std::optional<RatingsMeansRule> ratings_rule;
  std::optional<std::string> means_path;

  std::vector<PolicySpec> policies;  // empty selects all five policies
  std::uint64_t horizon = 1000;
  std::size_t num_runs = 100;
  std::uint64_t base_seed = 0;
  double cover_fraction = 1.0;
  std::string output_path;  // empty writes CSV to stdout
  std::size_t parallelism = 1;
  bool dump_full = false;  // checkpoint every step instead of log spacing
};

struct CheckpointStat {
  std::uint64_t t = 0;
  double mean_per_step_regret = 0.0;
  double std_error = 0.0;
};

struct RegretCurve {
  std::string policy;
  std::vector<CheckpointStat> per_step;  // strictly increasing t, last == T
};

struct SpeedupEntry {
  std::string policy;
  double k = 1.0;  // r_ucb1(T) / r_policy(T)
};

struct SpeedupReport {
  std::vector<SpeedupEntry> entries;
};

struct RunResult {
  std::vector<Arm> pull_log;
  std::vector<double> pseudo_regret_trajectory;  // [t-1] = regret after t rounds
  PolicyState final_state;
};

struct ExperimentResult {
  std::vector<RegretCurve> curves;
  SpeedupReport speedups;  // empty when UCB1 is not among the policies
  CoverStats cover_info;
  std::size_t num_cliques = 0;
  std::size_t num_arms = 0;  // arms after cover restriction
};

// Log-spaced checkpoints (plus the horizon itself); every step when `full`.
std::vector<std::uint64_t> regret_checkpoints(std::uint64_t horizon, bool full);

// Plays `horizon` rounds of select / sample / update with the policy's own
// update rule. Fully deterministic given the seed; the environment stream and
// the policy's exploration stream are independent substreams of it.
RunResult run_single(const BanditInstance& instance, const PolicySpec& policy,
                     std::uint64_t horizon, std::uint64_t seed);

// Builds the graph and means, computes the greedy cover at cover_fraction,
// restricts the bandit to the induced subgraph on covered arms, and runs
// num_runs paired runs per policy (run r of every policy is seeded
// base_seed + r). Aggregation is by run index, so results do not depend on
// the parallelism degree.
ExperimentResult run_experiment(const ExperimentConfig& config);

// k = r_ucb1(T) / r_policy(T) at the final checkpoint; 0/0 counts as 1 and
// x/0 as +infinity. Throws if no UCB1 curve is present.
SpeedupReport speedup(const std::vector<RegretCurve>& curves);

// CSV header: policy,t,mean_per_step_regret,stderr,num_cliques. Floats use 9
// significant digits; rows are sorted by (policy name, t).
void write_csv(const ExperimentResult& result, std::ostream& out);
void write_csv(const ExperimentResult& result, const std::string& path);

// "complete:50", "star:9", "path:16", "erdos_renyi:100:0.05[:seedN]",
// "preferential_attachment:80:3[:seedN]".
GraphGenSpec parse_graph_spec(const std::string& text);

// "uniform:LO:HI[:seedN]" or "ratings:PATH[:THRESHOLD]" or a means-file path.
void parse_means_spec(const std::string& text, ExperimentConfig& config);

// Parses run flags (argv without the program name). Supports --config FILE;
// command-line flags override file values. Throws std::invalid_argument with
// a usage message on bad input.
ExperimentConfig parse_config(const std::vector<std::string>& args);

}  // namespace sobandit
