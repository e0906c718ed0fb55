#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sobandit/environment.hpp"
#include "sobandit/graph.hpp"
#include "sobandit/rng.hpp"

using namespace sobandit;

namespace {

BanditInstance make_instance(std::vector<double> means,
                             const std::vector<std::pair<Arm, Arm>>& edges,
                             RewardFamily family = RewardFamily::Bernoulli) {
  const std::size_t k = means.size();
  return BanditInstance(std::move(means), family, build_graph(k, edges));
}

}  // namespace

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(make_instance({0.5, 1.2}, {}), std::invalid_argument);
  CHECK_THROWS_AS(make_instance({-0.1}, {}), std::invalid_argument);
  CHECK_THROWS_AS(
      BanditInstance({0.5}, RewardFamily::Bernoulli, build_graph(2, {})),
      std::invalid_argument);
}

TEST_CASE("gap_profile") {
  {
    const GapProfile p = gap_profile_from_means({0.9, 0.5, 0.8});
    CHECK(p.optimal_arm == 0);
    CHECK(p.optimal_mean == doctest::Approx(0.9));
    CHECK(p.gaps[0] == 0.0);
    CHECK(p.gaps[1] == doctest::Approx(0.4));
    CHECK(p.gaps[2] == doctest::Approx(0.1));
  }
  {
    const GapProfile p = gap_profile_from_means({0.6, 0.6, 0.6});
    CHECK(p.optimal_arm == 0);  // lowest-index tie-break
    for (double g : p.gaps) {
      CHECK(g == 0.0);
    }
  }
  {
    const GapProfile p = gap_profile_from_means({0.3, 0.3, 0.7});
    CHECK(p.optimal_arm == 2);
    CHECK(p.gaps == std::vector<double>{0.7 - 0.3, 0.7 - 0.3, 0.0});
  }
}

TEST_CASE("sample_round reveals exactly the neighborhood") {
  const BanditInstance inst =
      make_instance({0.2, 0.4, 0.6, 0.8}, {{0, 1}, {1, 2}});
  RandomStream rng(123);
  const RoundOutcome out = sample_round(inst, 1, rng);
  CHECK(out.pulled == 1);
  REQUIRE(out.observations.size() == 3);
  CHECK(out.observations[0].first == 0);
  CHECK(out.observations[1].first == 1);
  CHECK(out.observations[2].first == 2);
  CHECK(out.observations[1].second == out.reward);

  RandomStream rng2(123);
  const RoundOutcome isolated = sample_round(inst, 3, rng2);
  REQUIRE(isolated.observations.size() == 1);
  CHECK(isolated.observations[0].first == 3);
}

TEST_CASE("degenerate Bernoulli draws") {
  const BanditInstance ones = make_instance({1.0, 1.0, 1.0}, {{0, 1}, {1, 2}});
  const BanditInstance zeros = make_instance({0.0, 0.0, 0.0}, {{0, 1}, {1, 2}});
  RandomStream rng(7);
  for (int round = 0; round < 50; ++round) {
    for (const auto& [arm, value] : sample_round(ones, 1, rng).observations) {
      CHECK(value == 1.0);
    }
    for (const auto& [arm, value] : sample_round(zeros, 1, rng).observations) {
      CHECK(value == 0.0);
    }
  }
}

TEST_CASE("Bernoulli draws are 0/1 and constant family is noiseless") {
  const BanditInstance bern = make_instance({0.3, 0.6}, {{0, 1}});
  RandomStream rng(11);
  for (int round = 0; round < 200; ++round) {
    for (const auto& [arm, value] : sample_round(bern, 0, rng).observations) {
      CHECK((value == 0.0 || value == 1.0));
    }
  }
  const BanditInstance fixed =
      make_instance({0.3, 0.6}, {{0, 1}}, RewardFamily::Constant);
  RandomStream rng2(11);
  const RoundOutcome out = sample_round(fixed, 0, rng2);
  CHECK(out.observations[0].second == doctest::Approx(0.3));
  CHECK(out.observations[1].second == doctest::Approx(0.6));
}

TEST_CASE("sample_round Monte-Carlo concentration") {
  const BanditInstance inst = make_instance({0.3}, {});
  RandomStream rng(99);
  const int trials = 100000;
  double sum = 0.0;
  for (int i = 0; i < trials; ++i) {
    sum += sample_round(inst, 0, rng).reward;
  }
  const double mean = sum / trials;
  const double tol = 3.0 * std::sqrt(0.3 * 0.7 / trials);
  CHECK(std::abs(mean - 0.3) <= tol);
}

TEST_CASE("sample_round determinism for a fixed stream state") {
  const BanditInstance inst =
      make_instance({0.2, 0.5, 0.7}, {{0, 1}, {1, 2}, {0, 2}});
  RandomStream a(31415), b(31415);
  for (int round = 0; round < 20; ++round) {
    const RoundOutcome x = sample_round(inst, round % 3, a);
    const RoundOutcome y = sample_round(inst, round % 3, b);
    CHECK(x.observations == y.observations);
  }
}

TEST_CASE("pseudo_regret") {
  GapProfile gaps;
  gaps.optimal_arm = 0;
  gaps.optimal_mean = 0.9;
  gaps.gaps = {0.0, 0.4, 0.1};

  const std::vector<std::uint64_t> only_best{10, 0, 0};
  CHECK(pseudo_regret(gaps, only_best) == 0.0);

  const std::vector<std::uint64_t> mixed{10, 5, 5};
  CHECK(pseudo_regret(gaps, mixed) == doctest::Approx(2.5));

  GapProfile flat;
  flat.gaps = {0.0, 0.0, 0.0};
  const std::vector<std::uint64_t> any{3, 4, 5};
  CHECK(pseudo_regret(flat, any) == 0.0);

  const std::vector<std::uint64_t> short_counts{1, 2};
  CHECK_THROWS_AS(pseudo_regret(gaps, short_counts), std::invalid_argument);
}

TEST_CASE("means_from_ratings") {
  const std::vector<Rating> ratings{
      {0, 10, 5.0}, {0, 11, 4.0}, {0, 12, 2.0},
  };
  const std::vector<double> means = means_from_ratings(ratings, 3.5);
  REQUIRE(means.size() == 1);
  CHECK(means[0] == doctest::Approx(2.0 / 3.0));

  const std::vector<Rating> low{{0, 1, 3.5}, {0, 2, 1.0}};
  CHECK(means_from_ratings(low, 3.5)[0] == 0.0);  // strictly above only

  const std::vector<Rating> all{{0, 1, 0.5}, {0, 2, 5.0}};
  CHECK(means_from_ratings(all, 0.0)[0] == 1.0);

  // user 1 missing between users 0 and 2
  const std::vector<Rating> gap{{0, 1, 4.0}, {2, 1, 4.0}};
  CHECK_THROWS_AS(means_from_ratings(gap, 3.5), std::invalid_argument);
  CHECK_THROWS_AS(means_from_ratings({}, 3.5), std::invalid_argument);
}
