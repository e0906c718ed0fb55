#pragma once

#include <cstdint>
#include <vector>

#include "sobandit/environment.hpp"
#include "sobandit/graph.hpp"
#include "sobandit/rng.hpp"

namespace sobandit {

// Per-run learner state shared by all policies. obs_counts O_i counts every
// observation of arm i (pulls of i or of a neighbor); pull_counts T_i counts
// direct pulls only, so O_i >= T_i and sum_i T_i == step.
struct PolicyState {
  std::vector<double> empirical_means;
  std::vector<std::uint64_t> obs_counts;
  std::vector<std::uint64_t> pull_counts;
  std::uint64_t step = 0;

  PolicyState() = default;
  explicit PolicyState(std::size_t num_arms)
      : empirical_means(num_arms, 0.0),
        obs_counts(num_arms, 0),
        pull_counts(num_arms, 0) {}

  std::size_t num_arms() const { return empirical_means.size(); }
};

// mean + sqrt(2 ln t / count); +infinity when count == 0 so that every arm
// gets observed at least once. t must be >= 1.
double ucb_index(double mean, std::uint64_t count, std::uint64_t t);

// Lowest-index argmax of ucb_index over pull counts (no side information).
Arm select_ucb1(const PolicyState& state);

// Lowest-index argmax of ucb_index over observation counts.
Arm select_ucbn(const PolicyState& state);

struct MaxNChoice {
  Arm observe_target = 0;  // arm picked by UCB, the one we want to observe
  Arm pulled = 0;          // empirically best arm within N(observe_target)
};

MaxNChoice select_ucb_maxn(const PolicyState& state, const SOGraph& graph);

// Incremental update X_k <- x/O_k + (1 - 1/O_k) X_k for every observation in
// the outcome; increments the pulled arm's pull count and the step counter.
void update_observations(PolicyState& state, const RoundOutcome& outcome);

// Baseline update that ignores side observations: only the pulled arm's own
// reward enters the state.
void update_reward_only(PolicyState& state, Arm pulled, double reward);

// Baseline update that propagates the pulled arm's reward to every estimate
// in N(pulled); counters move as in update_observations but no side
// observations are consumed.
void update_on_cliques(PolicyState& state, Arm pulled, double reward,
                       const SOGraph& graph);

struct EpsilonGreedyConfig {
  double c = 5.0;
  double d = 1.0;
  std::size_t k_effective = 1;  // set to the number of cliques in the cover
};

// eps_n = min(1, c * k_effective / (d^2 * n)).
double epsilon_schedule(const EpsilonGreedyConfig& cfg, std::uint64_t n);

// With probability eps_n a uniformly random arm, otherwise the lowest-index
// argmax of the empirical means. Consumes one uniform for the explore test
// and, on exploration, one more for the arm choice.
Arm select_epsilon_greedy(const PolicyState& state,
                          const EpsilonGreedyConfig& cfg, RandomStream& rng);

}  // namespace sobandit
