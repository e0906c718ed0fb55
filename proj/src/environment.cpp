#include "sobandit/environment.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sobandit {

BanditInstance::BanditInstance(std::vector<double> means, RewardFamily family,
                               SOGraph graph)
    : means_(std::move(means)), family_(family), graph_(std::move(graph)) {
  if (means_.size() != graph_.num_arms()) {
    throw std::invalid_argument(
        "means length " + std::to_string(means_.size()) +
        " does not match graph arm count " + std::to_string(graph_.num_arms()));
  }
  for (double mu : means_) {
    if (!(mu >= 0.0 && mu <= 1.0)) {
      throw std::invalid_argument("arm mean outside [0, 1]");
    }
  }
}

GapProfile gap_profile_from_means(const std::vector<double>& means) {
  if (means.empty()) {
    throw std::invalid_argument("gap_profile: no arms");
  }
  GapProfile profile;
  profile.optimal_arm = 0;
  profile.optimal_mean = means[0];
  for (Arm i = 1; i < means.size(); ++i) {
    if (means[i] > profile.optimal_mean) {
      profile.optimal_mean = means[i];
      profile.optimal_arm = i;
    }
  }
  profile.gaps.reserve(means.size());
  for (double mu : means) {
    profile.gaps.push_back(profile.optimal_mean - mu);
  }
  return profile;
}

GapProfile gap_profile(const BanditInstance& instance) {
  return gap_profile_from_means(instance.means());
}

RoundOutcome sample_round(const BanditInstance& instance, Arm pulled,
                          RandomStream& rng) {
  const auto& hood = instance.graph().neighborhood(pulled);
  RoundOutcome outcome;
  outcome.pulled = pulled;
  outcome.observations.reserve(hood.size());
  for (Arm k : hood) {
    const double u = rng.uniform01();
    const double mu = instance.means()[k];
    const double value =
        instance.family() == RewardFamily::Bernoulli ? (u < mu ? 1.0 : 0.0) : mu;
    outcome.observations.emplace_back(k, value);
    if (k == pulled) {
      outcome.reward = value;
    }
  }
  return outcome;
}

double pseudo_regret(const GapProfile& gaps,
                     std::span<const std::uint64_t> pull_counts) {
  if (pull_counts.size() != gaps.gaps.size()) {
    throw std::invalid_argument("pseudo_regret: count / gap length mismatch");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < pull_counts.size(); ++i) {
    total += gaps.gaps[i] * static_cast<double>(pull_counts[i]);
  }
  return total;
}

std::vector<double> means_from_ratings(const std::vector<Rating>& ratings,
                                       double threshold) {
  if (ratings.empty()) {
    throw std::invalid_argument("means_from_ratings: no ratings");
  }
  std::size_t max_user = 0;
  for (const Rating& r : ratings) {
    max_user = std::max(max_user, r.user);
  }
  std::vector<std::size_t> total(max_user + 1, 0);
  std::vector<std::size_t> accepted(max_user + 1, 0);
  for (const Rating& r : ratings) {
    ++total[r.user];
    if (r.stars > threshold) {
      ++accepted[r.user];
    }
  }
  std::vector<double> means(max_user + 1, 0.0);
  for (std::size_t u = 0; u <= max_user; ++u) {
    if (total[u] == 0) {
      throw std::invalid_argument("user " + std::to_string(u) +
                                  " has no ratings");
    }
    means[u] =
        static_cast<double>(accepted[u]) / static_cast<double>(total[u]);
  }
  return means;
}

namespace {

bool data_line(const std::string& line, std::string& out) {
  const auto first = line.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || line[first] == '#') {
    return false;
  }
  out = line;
  return true;
}

}  // namespace

std::vector<Rating> load_ratings(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open ratings file: " + path);
  }
  std::vector<Rating> ratings;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string data;
    if (!data_line(line, data)) {
      continue;
    }
    std::istringstream fields(data);
    long long user = -1, item = -1;
    double stars = 0.0;
    std::string extra;
    if (!(fields >> user >> item >> stars) || (fields >> extra) || user < 0 ||
        item < 0) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected \"user item stars\"");
    }
    ratings.push_back(Rating{static_cast<std::size_t>(user),
                             static_cast<std::size_t>(item), stars});
  }
  return ratings;
}

std::vector<double> load_means(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open means file: " + path);
  }
  std::vector<double> means;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string data;
    if (!data_line(line, data)) {
      continue;
    }
    std::istringstream fields(data);
    double mu = 0.0;
    std::string extra;
    if (!(fields >> mu) || (fields >> extra)) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected one real per line");
    }
    if (!(mu >= 0.0 && mu <= 1.0)) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": mean outside [0, 1]");
    }
    means.push_back(mu);
  }
  if (means.empty()) {
    throw std::runtime_error(path + ": no means found");
  }
  return means;
}

}  // namespace sobandit
