#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sobandit {

using Arm = std::size_t;

// Undirected side-observation graph over arms. Immutable once built:
// adjacency lists are sorted, symmetric, and hold no self-loops.
class SOGraph {
 public:
  // Builds the graph from an edge list. Endpoints must lie in
  // [0, num_arms); self-loops are rejected; duplicate edges (in either
  // orientation) are deduplicated.
  SOGraph(std::size_t num_arms, const std::vector<std::pair<Arm, Arm>>& edges);

  std::size_t num_arms() const { return adjacency_.size(); }
  std::size_t num_edges() const { return num_edges_; }
  std::size_t degree(Arm i) const { return neighbors(i).size(); }

  // Neighbors of i, sorted, excluding i itself.
  const std::vector<Arm>& neighbors(Arm i) const;

  // Observation set N(i) = {i} plus neighbors, sorted.
  const std::vector<Arm>& neighborhood(Arm i) const;

  bool adjacent(Arm i, Arm j) const;

 private:
  std::vector<std::vector<Arm>> adjacency_;
  std::vector<std::vector<Arm>> neighborhoods_;
  std::size_t num_edges_ = 0;

  void check_arm(Arm i) const;
};

// Clique in a host graph: sorted, nonempty member list where every
// distinct pair is adjacent.
struct Clique {
  std::vector<Arm> members;
};

// Ordered clique cover. `cliques` is kept in selection order; `covered`
// is the sorted union of all member sets. `coverage_fraction` is the
// fraction that was requested, so |covered| >= ceil(fraction * K).
struct CliqueCover {
  std::vector<Clique> cliques;
  std::vector<Arm> covered;
  double coverage_fraction = 1.0;
};

struct CoverStats {
  std::size_t num_cliques = 0;
  double avg_cliques_per_arm = 0.0;
};

SOGraph build_graph(std::size_t num_arms,
                    const std::vector<std::pair<Arm, Arm>>& edges);

// True iff every distinct pair of members is adjacent. Members are treated
// as a set; an empty member list is an input error.
bool is_clique(const SOGraph& graph, std::span<const Arm> members);

// Grows a maximal clique around arm i. Candidate vertices are scanned in
// descending-degree order (ties by ascending index) and added when adjacent
// to every current member, so the result is deterministic for a given graph.
Clique maximal_clique_containing(const SOGraph& graph, Arm i);

// Greedy set cover over the candidate family {maximal_clique_containing(i)}.
// Repeatedly selects the candidate covering the most uncovered vertices
// (ties: lowest smallest-uncovered-member, then earliest generating vertex)
// until at least ceil(coverage_fraction * K) vertices are covered.
CliqueCover greedy_clique_cover(const SOGraph& graph, double coverage_fraction);

// The singleton cover {{i} : i in V}.
CliqueCover trivial_cover(std::size_t num_arms);

CoverStats cover_stats(const CliqueCover& cover);

enum class GraphKind {
  ErdosRenyi,
  PreferentialAttachment,
  Complete,
  Star,
  Path,
};

struct GraphGenSpec {
  GraphKind kind = GraphKind::Complete;
  std::size_t num_arms = 1;
  double edge_prob = 0.0;         // erdos_renyi only
  std::size_t attach_degree = 1;  // preferential_attachment only
  std::uint64_t seed = 0;         // ignored by complete/star/path
};

// Deterministic given the spec (including the seed).
SOGraph generate_graph(const GraphGenSpec& spec);

// Edge-list file: first non-comment line "K M", then M lines "u v" with
// 0-based indices. Lines starting with '#' are comments. Parse errors carry
// the offending line number.
SOGraph load_edge_list(const std::string& path);
SOGraph load_edge_list(std::istream& in, const std::string& context);

// Subgraph induced by `vertices` (sorted, unique, in range), with vertices
// renumbered 0..|vertices|-1 in sorted order.
SOGraph induced_subgraph(const SOGraph& graph, const std::vector<Arm>& vertices);

// Rewrites a cover into the index space of induced_subgraph(g, cover.covered).
CliqueCover reindex_cover_to_covered(const CliqueCover& cover);

// One line per clique, space-separated sorted member indices, selection order.
void write_cover(const CliqueCover& cover, std::ostream& out);

}  // namespace sobandit
