#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sobandit/environment.hpp"
#include "sobandit/graph.hpp"

namespace sobandit {

// Closed-form regret bound evaluated at a horizon:
//   total_at_n = log_coefficient * ln(n) + constant_term + residual_term.
// The log coefficient is +infinity when the cover puts an optimal arm in a
// clique with a suboptimal one (zero divisor in the bound).
struct CoverBoundReport {
  double log_coefficient = 0.0;
  double constant_term = 0.0;
  double residual_term = 0.0;  // UCB-MaxN bound only, 0 otherwise
  double total_at_n = 0.0;
  std::uint64_t horizon_n = 0;
};

// UCB1 bound: 8 (sum over suboptimal arms of 1/gap) ln n
//             + (1 + pi^2/3) sum of all gaps.
// With no suboptimal arm the report is identically zero.
CoverBoundReport ucb1_regret_bound(const GapProfile& gaps, std::uint64_t n);

// UCB-N bound for a full cover: 8 sum_C (max gap in C) / (min gap in C)^2
// in front of ln n, plus the same constant term as the UCB1 bound. A clique
// whose max gap is 0 contributes nothing; a clique mixing optimal and
// suboptimal arms yields +infinity.
CoverBoundReport clique_cover_bound_thm2(const GapProfile& gaps,
                                         const CliqueCover& cover,
                                         std::uint64_t n);

// UCB-MaxN bound: same log coefficient, constant term (1 + pi^2/3) sum_C
// (min gap in C), plus the vanishing residual
//   sum_C 2 sum_{i in C, delta_i > 0} gap_i
//         * (1 - e^{-n delta_i^2/2}) / (1 - e^{-delta_i^2/2})
//         * (1/n)^{4 delta_i^2 / (min gap in C)^2}
// with delta_i = gap_i - (min gap in C).
CoverBoundReport clique_cover_bound_thm3(const GapProfile& gaps,
                                         const CliqueCover& cover,
                                         std::uint64_t n);

// P(mean of n X's > mean of m Y's) <= 2 e^{-min(n,m) gap^2 / 2} for i.i.d.
// [0,1] variables whose means differ by gap > 0.
double lemma1_tail_bound(double gap, std::uint64_t n, std::uint64_t m);

enum class BoundKind { Thm2, Thm3 };

struct BestBound {
  std::size_t best_cover_index = 0;
  CoverBoundReport report;
};

// Minimizes total_at_n over a finite candidate list of full covers; ties go
// to the lowest list index. Infinite totals participate and always lose to a
// finite competitor.
BestBound best_bound_over_covers(const GapProfile& gaps,
                                 const std::vector<CliqueCover>& covers,
                                 std::uint64_t n, BoundKind which);

struct BoundReportRow {
  std::string which;     // "ucb1", "thm2", "thm3"
  std::string cover_id;  // e.g. "trivial", "greedy"
  CoverBoundReport report;
};

// CSV with header which,cover_id,log_coefficient,constant_term,
// residual_term,n,total. Infinities serialize as the literal "inf".
void write_bound_reports_csv(std::ostream& out,
                             const std::vector<BoundReportRow>& rows);

}  // namespace sobandit
