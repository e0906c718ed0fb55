#include "sobandit/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "sobandit/text.hpp"

namespace sobandit {

std::string policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Ucb1:
      return "ucb1";
    case PolicyKind::UcbN:
      return "ucb-n";
    case PolicyKind::UcbMaxN:
      return "ucb-maxn";
    case PolicyKind::Ucb1OnCliques:
      return "ucb1-on-cliques";
    case PolicyKind::EpsilonGreedy:
      return "epsilon-greedy";
  }
  throw std::invalid_argument("unknown policy kind");
}

PolicyKind parse_policy_name(const std::string& name) {
  if (name == "ucb1") return PolicyKind::Ucb1;
  if (name == "ucb-n") return PolicyKind::UcbN;
  if (name == "ucb-maxn") return PolicyKind::UcbMaxN;
  if (name == "ucb1-on-cliques") return PolicyKind::Ucb1OnCliques;
  if (name == "epsilon-greedy") return PolicyKind::EpsilonGreedy;
  throw std::invalid_argument(
      "unknown policy \"" + name +
      "\" (expected ucb1, ucb-n, ucb-maxn, ucb1-on-cliques, epsilon-greedy)");
}

std::vector<std::uint64_t> regret_checkpoints(std::uint64_t horizon,
                                              bool full) {
  if (horizon == 0) {
    throw std::invalid_argument("horizon must be >= 1");
  }
  std::vector<std::uint64_t> points;
  if (full) {
    points.resize(horizon);
    for (std::uint64_t t = 1; t <= horizon; ++t) {
      points[t - 1] = t;
    }
    return points;
  }
  constexpr int kPoints = 64;
  for (int j = 1; j <= kPoints; ++j) {
    const double exact = std::pow(static_cast<double>(horizon),
                                  static_cast<double>(j) / kPoints);
    auto t = static_cast<std::uint64_t>(std::llround(exact));
    t = std::clamp<std::uint64_t>(t, 1, horizon);
    points.push_back(t);
  }
  points.push_back(horizon);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

RunResult run_single(const BanditInstance& instance, const PolicySpec& policy,
                     std::uint64_t horizon, std::uint64_t seed) {
  if (horizon == 0) {
    throw std::invalid_argument("horizon must be >= 1");
  }
  const SOGraph& graph = instance.graph();
  const GapProfile gaps = gap_profile(instance);
  RandomStream env_rng(seed, kEnvStream);
  RandomStream policy_rng(seed, kPolicyStream);

  PolicyState state(instance.num_arms());
  RunResult result;
  result.pull_log.reserve(horizon);
  result.pseudo_regret_trajectory.reserve(horizon);
  double regret = 0.0;

  for (std::uint64_t t = 1; t <= horizon; ++t) {
    Arm pull = 0;
    switch (policy.kind) {
      case PolicyKind::Ucb1:
        pull = select_ucb1(state);
        break;
      case PolicyKind::UcbN:
      case PolicyKind::Ucb1OnCliques:
        pull = select_ucbn(state);
        break;
      case PolicyKind::UcbMaxN:
        pull = select_ucb_maxn(state, graph).pulled;
        break;
      case PolicyKind::EpsilonGreedy:
        pull = select_epsilon_greedy(state, policy.epsilon, policy_rng);
        break;
    }

    // The environment reveals N(pull) regardless of the policy; baselines
    // that cannot see side observations simply ignore them.
    const RoundOutcome outcome = sample_round(instance, pull, env_rng);
    switch (policy.kind) {
      case PolicyKind::Ucb1:
        update_reward_only(state, pull, outcome.reward);
        break;
      case PolicyKind::Ucb1OnCliques:
        update_on_cliques(state, pull, outcome.reward, graph);
        break;
      default:
        update_observations(state, outcome);
        break;
    }

    regret += gaps.gaps[pull];
    result.pull_log.push_back(pull);
    result.pseudo_regret_trajectory.push_back(regret);
  }
  result.final_state = std::move(state);
  return result;
}

namespace {

// Runs fn(0..count-1) on up to `threads` workers. Tasks write to disjoint
// slots, so scheduling order cannot affect results.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) {
        return;
      }
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back(worker);
  }
  for (auto& th : pool) {
    th.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
}

std::vector<PolicySpec> default_policies() {
  return {
      {PolicyKind::Ucb1, {}},          {PolicyKind::Ucb1OnCliques, {}},
      {PolicyKind::UcbN, {}},          {PolicyKind::UcbMaxN, {}},
      {PolicyKind::EpsilonGreedy, {}},
  };
}

SOGraph build_full_graph(const ExperimentConfig& config) {
  if (config.graph_gen.has_value() == config.edge_list_path.has_value()) {
    throw std::invalid_argument(
        "exactly one of --graph and --edge-list is required");
  }
  if (config.graph_gen) {
    return generate_graph(*config.graph_gen);
  }
  return load_edge_list(*config.edge_list_path);
}

std::vector<double> build_full_means(const ExperimentConfig& config,
                                     std::size_t num_arms) {
  const int sources = (config.means_rule ? 1 : 0) +
                      (config.ratings_rule ? 1 : 0) +
                      (config.means_path ? 1 : 0);
  if (sources != 1) {
    throw std::invalid_argument("exactly one --means source is required");
  }
  std::vector<double> means;
  if (config.means_rule) {
    const UniformMeansRule& rule = *config.means_rule;
    if (!(rule.lo >= 0.0 && rule.hi <= 1.0 && rule.lo <= rule.hi)) {
      throw std::invalid_argument(
          "uniform means rule needs 0 <= lo <= hi <= 1");
    }
    RandomStream rng(rule.seed, kMeansStream);
    means.reserve(num_arms);
    for (std::size_t i = 0; i < num_arms; ++i) {
      means.push_back(rng.uniform(rule.lo, rule.hi));
    }
  } else if (config.ratings_rule) {
    means = means_from_ratings(load_ratings(config.ratings_rule->path),
                               config.ratings_rule->threshold);
  } else {
    means = load_means(*config.means_path);
  }
  if (means.size() != num_arms) {
    throw std::invalid_argument("means count " + std::to_string(means.size()) +
                                " does not match graph arm count " +
                                std::to_string(num_arms));
  }
  return means;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.horizon == 0 || config.num_runs == 0) {
    throw std::invalid_argument("horizon and runs must be >= 1");
  }
  if (config.parallelism == 0) {
    throw std::invalid_argument("parallelism must be >= 1");
  }
  if (!(config.cover_fraction > 0.0) || config.cover_fraction > 1.0) {
    throw std::invalid_argument("cover fraction must lie in (0, 1]");
  }

  const SOGraph full_graph = build_full_graph(config);
  const std::vector<double> full_means =
      build_full_means(config, full_graph.num_arms());

  // Cover first, then restrict the game to the covered induced subgraph.
  const CliqueCover full_cover =
      greedy_clique_cover(full_graph, config.cover_fraction);
  SOGraph graph = induced_subgraph(full_graph, full_cover.covered);
  const CliqueCover cover = reindex_cover_to_covered(full_cover);
  std::vector<double> means;
  means.reserve(full_cover.covered.size());
  for (Arm v : full_cover.covered) {
    means.push_back(full_means[v]);
  }
  const BanditInstance instance(std::move(means), RewardFamily::Bernoulli,
                                std::move(graph));

  std::vector<PolicySpec> policies =
      config.policies.empty() ? default_policies() : config.policies;
  {
    std::vector<PolicySpec> unique;
    for (const PolicySpec& p : policies) {
      const bool dup = std::any_of(
          unique.begin(), unique.end(),
          [&](const PolicySpec& q) { return q.kind == p.kind; });
      if (!dup) {
        unique.push_back(p);
      }
    }
    policies = std::move(unique);
  }
  for (PolicySpec& p : policies) {
    p.epsilon.k_effective = cover.cliques.size();
  }

  const std::vector<std::uint64_t> checkpoints =
      regret_checkpoints(config.horizon, config.dump_full);

  // per_run[p][r][c]: per-step pseudo-regret of run r at checkpoint c.
  std::vector<std::vector<std::vector<double>>> per_run(
      policies.size(),
      std::vector<std::vector<double>>(config.num_runs));
  const std::size_t tasks = policies.size() * config.num_runs;
  parallel_for(tasks, config.parallelism, [&](std::size_t task) {
    const std::size_t p = task / config.num_runs;
    const std::size_t r = task % config.num_runs;
    const RunResult run = run_single(instance, policies[p], config.horizon,
                                     config.base_seed + r);
    std::vector<double>& slot = per_run[p][r];
    slot.reserve(checkpoints.size());
    for (std::uint64_t t : checkpoints) {
      slot.push_back(run.pseudo_regret_trajectory[t - 1] /
                     static_cast<double>(t));
    }
  });

  ExperimentResult result;
  result.num_arms = instance.num_arms();
  result.cover_info = cover_stats(cover);
  result.num_cliques = cover.cliques.size();
  for (std::size_t p = 0; p < policies.size(); ++p) {
    RegretCurve curve;
    curve.policy = policy_name(policies[p].kind);
    for (std::size_t c = 0; c < checkpoints.size(); ++c) {
      double sum = 0.0;
      for (std::size_t r = 0; r < config.num_runs; ++r) {
        sum += per_run[p][r][c];
      }
      const double mean = sum / static_cast<double>(config.num_runs);
      double std_error = 0.0;
      if (config.num_runs > 1) {
        double sq = 0.0;
        for (std::size_t r = 0; r < config.num_runs; ++r) {
          const double d = per_run[p][r][c] - mean;
          sq += d * d;
        }
        std_error = std::sqrt(sq / static_cast<double>(config.num_runs - 1)) /
                    std::sqrt(static_cast<double>(config.num_runs));
      }
      curve.per_step.push_back(CheckpointStat{checkpoints[c], mean, std_error});
    }
    result.curves.push_back(std::move(curve));
  }

  const bool has_ucb1 = std::any_of(
      result.curves.begin(), result.curves.end(),
      [](const RegretCurve& c) { return c.policy == "ucb1"; });
  if (has_ucb1) {
    result.speedups = speedup(result.curves);
  }
  return result;
}

SpeedupReport speedup(const std::vector<RegretCurve>& curves) {
  const RegretCurve* baseline = nullptr;
  for (const RegretCurve& c : curves) {
    if (c.policy == "ucb1") {
      baseline = &c;
      break;
    }
  }
  if (baseline == nullptr || baseline->per_step.empty()) {
    throw std::invalid_argument("speedup: UCB1 curve required");
  }
  const double r_ucb1 = baseline->per_step.back().mean_per_step_regret;
  SpeedupReport report;
  for (const RegretCurve& c : curves) {
    const double r = c.per_step.back().mean_per_step_regret;
    double k = 0.0;
    if (r > 0.0) {
      k = r_ucb1 / r;
    } else {
      k = r_ucb1 > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
    }
    report.entries.push_back(SpeedupEntry{c.policy, k});
  }
  return report;
}

void write_csv(const ExperimentResult& result, std::ostream& out) {
  out << "policy,t,mean_per_step_regret,stderr,num_cliques\n";
  std::vector<const RegretCurve*> ordered;
  ordered.reserve(result.curves.size());
  for (const RegretCurve& c : result.curves) {
    ordered.push_back(&c);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const RegretCurve* a, const RegretCurve* b) {
              return a->policy < b->policy;
            });
  for (const RegretCurve* curve : ordered) {
    for (const CheckpointStat& stat : curve->per_step) {
      out << curve->policy << ',' << stat.t << ','
          << format_real(stat.mean_per_step_regret) << ','
          << format_real(stat.std_error) << ',' << result.num_cliques << '\n';
    }
  }
}

void write_csv(const ExperimentResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  write_csv(result, out);
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

}  // namespace sobandit
