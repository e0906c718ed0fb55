#include "sobandit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "sobandit/text.hpp"

namespace sobandit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// The 1 + pi^2/3 factor in front of the constant terms.
const double kConstFactor = 1.0 + std::numbers::pi * std::numbers::pi / 3.0;

void check_horizon(std::uint64_t n) {
  if (n < 2) {
    throw std::invalid_argument("bound horizon must be >= 2");
  }
}

void check_full_cover(const GapProfile& gaps, const CliqueCover& cover) {
  const std::size_t k = gaps.gaps.size();
  if (cover.covered.size() != k) {
    throw std::invalid_argument("bound requires a cover of all " +
                                std::to_string(k) + " arms");
  }
  for (Arm i = 0; i < k; ++i) {
    if (cover.covered[i] != i) {
      throw std::invalid_argument("bound requires a cover of all arms");
    }
  }
}

struct CliqueGaps {
  double max_gap = 0.0;
  double min_gap = 0.0;  // the paper's per-clique gap
};

CliqueGaps clique_gaps(const GapProfile& gaps, const Clique& clique) {
  CliqueGaps out{0.0, kInf};
  for (Arm m : clique.members) {
    if (m >= gaps.gaps.size()) {
      throw std::invalid_argument("cover references arm out of range");
    }
    out.max_gap = std::max(out.max_gap, gaps.gaps[m]);
    out.min_gap = std::min(out.min_gap, gaps.gaps[m]);
  }
  return out;
}

// 8 sum_C (max gap) / (min gap)^2; +inf for a mixed-optimal clique, 0 from
// all-optimal cliques.
double cover_log_coefficient(const GapProfile& gaps, const CliqueCover& cover) {
  double coefficient = 0.0;
  for (const Clique& c : cover.cliques) {
    const CliqueGaps cg = clique_gaps(gaps, c);
    if (cg.max_gap == 0.0) {
      continue;
    }
    if (cg.min_gap == 0.0) {
      return kInf;
    }
    coefficient += 8.0 * cg.max_gap / (cg.min_gap * cg.min_gap);
  }
  return coefficient;
}

double finish_total(CoverBoundReport& report, std::uint64_t n) {
  report.horizon_n = n;
  report.total_at_n =
      report.log_coefficient * std::log(static_cast<double>(n)) +
      report.constant_term + report.residual_term;
  return report.total_at_n;
}

}  // namespace

CoverBoundReport ucb1_regret_bound(const GapProfile& gaps, std::uint64_t n) {
  check_horizon(n);
  CoverBoundReport report;
  double reciprocal_sum = 0.0;
  double gap_sum = 0.0;
  for (double gap : gaps.gaps) {
    gap_sum += gap;
    if (gap > 0.0) {
      reciprocal_sum += 1.0 / gap;
    }
  }
  report.log_coefficient = 8.0 * reciprocal_sum;
  report.constant_term = kConstFactor * gap_sum;
  finish_total(report, n);
  return report;
}

CoverBoundReport clique_cover_bound_thm2(const GapProfile& gaps,
                                         const CliqueCover& cover,
                                         std::uint64_t n) {
  check_horizon(n);
  check_full_cover(gaps, cover);
  CoverBoundReport report;
  report.log_coefficient = cover_log_coefficient(gaps, cover);
  double gap_sum = 0.0;
  for (double gap : gaps.gaps) {
    gap_sum += gap;
  }
  report.constant_term = kConstFactor * gap_sum;
  finish_total(report, n);
  return report;
}

CoverBoundReport clique_cover_bound_thm3(const GapProfile& gaps,
                                         const CliqueCover& cover,
                                         std::uint64_t n) {
  check_horizon(n);
  check_full_cover(gaps, cover);
  CoverBoundReport report;
  report.log_coefficient = cover_log_coefficient(gaps, cover);

  const double dn = static_cast<double>(n);
  double clique_gap_sum = 0.0;
  double residual = 0.0;
  for (const Clique& c : cover.cliques) {
    const CliqueGaps cg = clique_gaps(gaps, c);
    clique_gap_sum += cg.min_gap;
    if (cg.min_gap == 0.0) {
      continue;  // all-optimal clique has no residual; mixed-optimal is
                 // already infinite through the log coefficient
    }
    for (Arm m : c.members) {
      const double delta = gaps.gaps[m] - cg.min_gap;
      if (delta <= 0.0) {
        continue;
      }
      const double half_sq = 0.5 * delta * delta;
      const double geometric = -std::expm1(-dn * half_sq) / -std::expm1(-half_sq);
      const double decay =
          std::pow(1.0 / dn, 4.0 * delta * delta / (cg.min_gap * cg.min_gap));
      residual += 2.0 * gaps.gaps[m] * geometric * decay;
    }
  }
  report.constant_term = kConstFactor * clique_gap_sum;
  report.residual_term = residual;
  finish_total(report, n);
  return report;
}

double lemma1_tail_bound(double gap, std::uint64_t n, std::uint64_t m) {
  if (!(gap > 0.0)) {
    throw std::invalid_argument("lemma1_tail_bound: gap must be > 0");
  }
  if (n == 0 || m == 0) {
    throw std::invalid_argument("lemma1_tail_bound: n, m must be >= 1");
  }
  const double samples = static_cast<double>(std::min(n, m));
  return 2.0 * std::exp(-samples * gap * gap / 2.0);
}

BestBound best_bound_over_covers(const GapProfile& gaps,
                                 const std::vector<CliqueCover>& covers,
                                 std::uint64_t n, BoundKind which) {
  if (covers.empty()) {
    throw std::invalid_argument("best_bound_over_covers: empty cover list");
  }
  BestBound best;
  bool have = false;
  for (std::size_t idx = 0; idx < covers.size(); ++idx) {
    const CoverBoundReport report =
        which == BoundKind::Thm2 ? clique_cover_bound_thm2(gaps, covers[idx], n)
                                 : clique_cover_bound_thm3(gaps, covers[idx], n);
    if (!have || report.total_at_n < best.report.total_at_n) {
      best.best_cover_index = idx;
      best.report = report;
      have = true;
    }
  }
  return best;
}

void write_bound_reports_csv(std::ostream& out,
                             const std::vector<BoundReportRow>& rows) {
  out << "which,cover_id,log_coefficient,constant_term,residual_term,n,total\n";
  for (const BoundReportRow& row : rows) {
    out << row.which << ',' << row.cover_id << ','
        << format_real(row.report.log_coefficient) << ','
        << format_real(row.report.constant_term) << ','
        << format_real(row.report.residual_term) << ',' << row.report.horizon_n
        << ',' << format_real(row.report.total_at_n) << '\n';
  }
}

}  // namespace sobandit
