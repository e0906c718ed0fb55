#include "sobandit/policies.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sobandit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Lowest-index argmax over per-arm UCB indices; `counts` is T for UCB1 and
// O for UCB-N.
Arm select_by_index(const PolicyState& state,
                    const std::vector<std::uint64_t>& counts) {
  const std::uint64_t t = state.step + 1;
  const double bias_numerator = 2.0 * std::log(static_cast<double>(t));
  Arm best = 0;
  double best_index = -kInf;
  for (Arm i = 0; i < state.num_arms(); ++i) {
    const double index =
        counts[i] == 0
            ? kInf
            : state.empirical_means[i] +
                  std::sqrt(bias_numerator / static_cast<double>(counts[i]));
    if (index > best_index) {
      best_index = index;
      best = i;
    }
  }
  return best;
}

void apply_observation(PolicyState& state, Arm k, double value) {
  const std::uint64_t count = ++state.obs_counts[k];
  const double inv = 1.0 / static_cast<double>(count);
  state.empirical_means[k] = value * inv + (1.0 - inv) * state.empirical_means[k];
}

}  // namespace

double ucb_index(double mean, std::uint64_t count, std::uint64_t t) {
  if (t == 0) {
    throw std::invalid_argument("ucb_index: t must be >= 1");
  }
  if (count == 0) {
    return kInf;
  }
  return mean + std::sqrt(2.0 * std::log(static_cast<double>(t)) /
                          static_cast<double>(count));
}

Arm select_ucb1(const PolicyState& state) {
  return select_by_index(state, state.pull_counts);
}

Arm select_ucbn(const PolicyState& state) {
  return select_by_index(state, state.obs_counts);
}

MaxNChoice select_ucb_maxn(const PolicyState& state, const SOGraph& graph) {
  MaxNChoice choice;
  choice.observe_target = select_ucbn(state);
  const auto& hood = graph.neighborhood(choice.observe_target);
  Arm best = hood.front();
  double best_mean = state.empirical_means[best];
  for (Arm j : hood) {
    if (state.empirical_means[j] > best_mean) {
      best_mean = state.empirical_means[j];
      best = j;
    }
  }
  choice.pulled = best;
  return choice;
}

void update_observations(PolicyState& state, const RoundOutcome& outcome) {
  ++state.pull_counts[outcome.pulled];
  ++state.step;
  for (const auto& [k, value] : outcome.observations) {
    apply_observation(state, k, value);
  }
}

void update_reward_only(PolicyState& state, Arm pulled, double reward) {
  ++state.pull_counts[pulled];
  ++state.step;
  apply_observation(state, pulled, reward);
}

void update_on_cliques(PolicyState& state, Arm pulled, double reward,
                       const SOGraph& graph) {
  ++state.pull_counts[pulled];
  ++state.step;
  for (Arm k : graph.neighborhood(pulled)) {
    apply_observation(state, k, reward);
  }
}

double epsilon_schedule(const EpsilonGreedyConfig& cfg, std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("epsilon_schedule: n must be >= 1");
  }
  if (!(cfg.c > 0.0) || !(cfg.d > 0.0) || cfg.k_effective == 0) {
    throw std::invalid_argument("epsilon-greedy: need c > 0, d > 0, K >= 1");
  }
  const double eps = cfg.c * static_cast<double>(cfg.k_effective) /
                     (cfg.d * cfg.d * static_cast<double>(n));
  return std::min(1.0, eps);
}

Arm select_epsilon_greedy(const PolicyState& state,
                          const EpsilonGreedyConfig& cfg, RandomStream& rng) {
  const double eps = epsilon_schedule(cfg, state.step + 1);
  if (rng.uniform01() < eps) {
    return static_cast<Arm>(rng.uniform_index(state.num_arms()));
  }
  Arm best = 0;
  double best_mean = state.empirical_means[0];
  for (Arm i = 1; i < state.num_arms(); ++i) {
    if (state.empirical_means[i] > best_mean) {
      best_mean = state.empirical_means[i];
      best = i;
    }
  }
  return best;
}

}  // namespace sobandit
