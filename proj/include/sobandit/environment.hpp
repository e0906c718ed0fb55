#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sobandit/graph.hpp"
#include "sobandit/rng.hpp"

namespace sobandit {

// Reward distribution family. Every family has support in [0, 1] and mean
// equal to the arm's configured mean. Constant is the degenerate point mass,
// handy for noise-free tests.
enum class RewardFamily {
  Bernoulli,
  Constant,
};

// A bandit problem: per-arm means, a reward family, and the side-observation
// graph. Immutable and shareable across concurrent runs.
class BanditInstance {
 public:
  BanditInstance(std::vector<double> means, RewardFamily family, SOGraph graph);

  std::size_t num_arms() const { return means_.size(); }
  const std::vector<double>& means() const { return means_; }
  RewardFamily family() const { return family_; }
  const SOGraph& graph() const { return graph_; }

 private:
  std::vector<double> means_;
  RewardFamily family_;
  SOGraph graph_;
};

struct GapProfile {
  Arm optimal_arm = 0;
  double optimal_mean = 0.0;
  std::vector<double> gaps;  // gaps[i] = optimal_mean - means[i]
};

// One round of play: the pulled arm, its reward, and the values revealed for
// every arm in N(pulled), in ascending arm order.
struct RoundOutcome {
  Arm pulled = 0;
  double reward = 0.0;
  std::vector<std::pair<Arm, double>> observations;
};

// Lowest-index argmax of the means wins ties for the optimal arm.
GapProfile gap_profile(const BanditInstance& instance);
GapProfile gap_profile_from_means(const std::vector<double>& means);

// Draws one independent value for every arm in N(pulled). Each observed arm
// consumes exactly one uniform from the stream, in ascending arm order; arms
// outside N(pulled) consume nothing.
RoundOutcome sample_round(const BanditInstance& instance, Arm pulled,
                          RandomStream& rng);

// Sum over arms of gap_i * pull_counts_i.
double pseudo_regret(const GapProfile& gaps,
                     std::span<const std::uint64_t> pull_counts);

struct Rating {
  std::size_t user = 0;
  std::size_t item = 0;
  double stars = 0.0;
};

// Per-user mean = fraction of that user's ratings strictly above `threshold`,
// i.e. the Bernoulli acceptance probability. Users are indexed 0..max_user;
// a user with no ratings is an input error.
std::vector<double> means_from_ratings(const std::vector<Rating>& ratings,
                                       double threshold);

// Ratings file: lines "user item stars"; '#' comments allowed.
std::vector<Rating> load_ratings(const std::string& path);

// Means file: one real in [0, 1] per line, line index = arm index;
// '#' comments allowed.
std::vector<double> load_means(const std::string& path);

}  // namespace sobandit
