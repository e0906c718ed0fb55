#include "sobandit/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sobandit/rng.hpp"

namespace sobandit {

SOGraph::SOGraph(std::size_t num_arms,
                 const std::vector<std::pair<Arm, Arm>>& edges) {
  if (num_arms == 0) {
    throw std::invalid_argument("graph must have at least one arm");
  }
  adjacency_.assign(num_arms, {});
  for (const auto& [u, v] : edges) {
    if (u >= num_arms || v >= num_arms) {
      throw std::invalid_argument("edge endpoint out of range: (" +
                                  std::to_string(u) + ", " + std::to_string(v) +
                                  ") with " + std::to_string(num_arms) +
                                  " arms");
    }
    if (u == v) {
      throw std::invalid_argument("self-loop rejected: arm " +
                                  std::to_string(u));
    }
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    num_edges_ += list.size();
  }
  num_edges_ /= 2;
  neighborhoods_.resize(num_arms);
  for (Arm i = 0; i < num_arms; ++i) {
    auto& hood = neighborhoods_[i];
    hood = adjacency_[i];
    hood.insert(std::lower_bound(hood.begin(), hood.end(), i), i);
  }
}

void SOGraph::check_arm(Arm i) const {
  if (i >= num_arms()) {
    throw std::invalid_argument("arm index " + std::to_string(i) +
                                " out of range [0, " +
                                std::to_string(num_arms()) + ")");
  }
}

const std::vector<Arm>& SOGraph::neighbors(Arm i) const {
  check_arm(i);
  return adjacency_[i];
}

const std::vector<Arm>& SOGraph::neighborhood(Arm i) const {
  check_arm(i);
  return neighborhoods_[i];
}

bool SOGraph::adjacent(Arm i, Arm j) const {
  check_arm(i);
  check_arm(j);
  const auto& list = adjacency_[i];
  return std::binary_search(list.begin(), list.end(), j);
}

SOGraph build_graph(std::size_t num_arms,
                    const std::vector<std::pair<Arm, Arm>>& edges) {
  return SOGraph(num_arms, edges);
}

bool is_clique(const SOGraph& graph, std::span<const Arm> members) {
  if (members.empty()) {
    throw std::invalid_argument("is_clique: empty member set");
  }
  std::vector<Arm> set(members.begin(), members.end());
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  for (std::size_t a = 0; a < set.size(); ++a) {
    for (std::size_t b = a + 1; b < set.size(); ++b) {
      if (!graph.adjacent(set[a], set[b])) {
        return false;
      }
    }
  }
  return true;
}

Clique maximal_clique_containing(const SOGraph& graph, Arm i) {
  const std::size_t k = graph.num_arms();
  if (i >= k) {
    throw std::invalid_argument("arm index out of range");
  }
  // Scan order: descending degree, ties by ascending index.
  std::vector<Arm> order(k);
  std::iota(order.begin(), order.end(), Arm{0});
  std::stable_sort(order.begin(), order.end(), [&](Arm a, Arm b) {
    return graph.degree(a) > graph.degree(b);
  });

  std::vector<Arm> members{i};
  for (Arm v : order) {
    if (v == i) {
      continue;
    }
    bool compatible = true;
    for (Arm m : members) {
      if (!graph.adjacent(v, m)) {
        compatible = false;
        break;
      }
    }
    if (compatible) {
      members.push_back(v);
    }
  }
  std::sort(members.begin(), members.end());
  return Clique{std::move(members)};
}

CliqueCover greedy_clique_cover(const SOGraph& graph,
                                double coverage_fraction) {
  if (!(coverage_fraction > 0.0) || coverage_fraction > 1.0) {
    throw std::invalid_argument("coverage fraction must lie in (0, 1]");
  }
  const std::size_t k = graph.num_arms();

  // Candidate family: one maximal clique per vertex, deduplicated keeping the
  // earliest generating vertex.
  std::vector<Clique> candidates;
  candidates.reserve(k);
  std::set<std::vector<Arm>> seen;
  for (Arm i = 0; i < k; ++i) {
    Clique c = maximal_clique_containing(graph, i);
    if (seen.insert(c.members).second) {
      candidates.push_back(std::move(c));
    }
  }

  std::size_t target = static_cast<std::size_t>(
      std::ceil(coverage_fraction * static_cast<double>(k) - 1e-9));
  target = std::min(std::max<std::size_t>(target, 1), k);

  std::vector<bool> covered(k, false);
  std::size_t covered_count = 0;
  CliqueCover cover;
  cover.coverage_fraction = coverage_fraction;

  while (covered_count < target) {
    std::size_t best = candidates.size();
    std::size_t best_gain = 0;
    Arm best_min_uncovered = k;
    for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
      std::size_t gain = 0;
      Arm min_uncovered = k;
      for (Arm m : candidates[idx].members) {
        if (!covered[m]) {
          ++gain;
          min_uncovered = std::min(min_uncovered, m);
        }
      }
      if (gain > best_gain ||
          (gain == best_gain && gain > 0 &&
           min_uncovered < best_min_uncovered)) {
        best = idx;
        best_gain = gain;
        best_min_uncovered = min_uncovered;
      }
    }
    if (best == candidates.size() || best_gain == 0) {
      break;  // unreachable for a valid candidate family
    }
    for (Arm m : candidates[best].members) {
      if (!covered[m]) {
        covered[m] = true;
        ++covered_count;
      }
    }
    cover.cliques.push_back(candidates[best]);
  }

  for (Arm i = 0; i < k; ++i) {
    if (covered[i]) {
      cover.covered.push_back(i);
    }
  }
  return cover;
}

CliqueCover trivial_cover(std::size_t num_arms) {
  if (num_arms == 0) {
    throw std::invalid_argument("trivial_cover: need at least one arm");
  }
  CliqueCover cover;
  cover.coverage_fraction = 1.0;
  cover.cliques.reserve(num_arms);
  cover.covered.resize(num_arms);
  std::iota(cover.covered.begin(), cover.covered.end(), Arm{0});
  for (Arm i = 0; i < num_arms; ++i) {
    cover.cliques.push_back(Clique{{i}});
  }
  return cover;
}

CoverStats cover_stats(const CliqueCover& cover) {
  CoverStats stats;
  stats.num_cliques = cover.cliques.size();
  if (cover.covered.empty()) {
    return stats;
  }
  std::size_t memberships = 0;
  for (const Clique& c : cover.cliques) {
    memberships += c.members.size();
  }
  stats.avg_cliques_per_arm =
      static_cast<double>(memberships) / static_cast<double>(cover.covered.size());
  return stats;
}

SOGraph generate_graph(const GraphGenSpec& spec) {
  const std::size_t k = spec.num_arms;
  if (k == 0) {
    throw std::invalid_argument("generate_graph: need at least one arm");
  }
  std::vector<std::pair<Arm, Arm>> edges;
  switch (spec.kind) {
    case GraphKind::Complete:
      for (Arm i = 0; i < k; ++i) {
        for (Arm j = i + 1; j < k; ++j) {
          edges.emplace_back(i, j);
        }
      }
      break;
    case GraphKind::Star:
      for (Arm j = 1; j < k; ++j) {
        edges.emplace_back(0, j);
      }
      break;
    case GraphKind::Path:
      for (Arm i = 0; i + 1 < k; ++i) {
        edges.emplace_back(i, i + 1);
      }
      break;
    case GraphKind::ErdosRenyi: {
      if (spec.edge_prob < 0.0 || spec.edge_prob > 1.0) {
        throw std::invalid_argument("erdos_renyi: p must lie in [0, 1]");
      }
      RandomStream rng(spec.seed, kGraphStream);
      for (Arm i = 0; i < k; ++i) {
        for (Arm j = i + 1; j < k; ++j) {
          if (rng.uniform01() < spec.edge_prob) {
            edges.emplace_back(i, j);
          }
        }
      }
      break;
    }
    case GraphKind::PreferentialAttachment: {
      const std::size_t m = spec.attach_degree;
      if (m == 0) {
        throw std::invalid_argument(
            "preferential_attachment: attach degree must be >= 1");
      }
      const std::size_t core = std::min(k, m + 1);
      for (Arm i = 0; i < core; ++i) {
        for (Arm j = i + 1; j < core; ++j) {
          edges.emplace_back(i, j);
        }
      }
      // Endpoint list: each vertex appears once per incident edge, so a
      // uniform draw is degree-proportional.
      std::vector<Arm> endpoints;
      for (const auto& [u, v] : edges) {
        endpoints.push_back(u);
        endpoints.push_back(v);
      }
      RandomStream rng(spec.seed, kGraphStream);
      for (Arm v = core; v < k; ++v) {
        std::vector<Arm> targets;
        while (targets.size() < m) {
          Arm cand = endpoints[rng.uniform_index(endpoints.size())];
          if (std::find(targets.begin(), targets.end(), cand) ==
              targets.end()) {
            targets.push_back(cand);
          }
        }
        for (Arm t : targets) {
          edges.emplace_back(t, v);
          endpoints.push_back(t);
          endpoints.push_back(v);
        }
      }
      break;
    }
  }
  return SOGraph(k, edges);
}

namespace {

[[noreturn]] void parse_fail(const std::string& context, std::size_t line_no,
                             const std::string& message) {
  throw std::runtime_error(context + ":" + std::to_string(line_no) + ": " +
                           message);
}

bool data_line(const std::string& line, std::string& out) {
  const auto first = line.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || line[first] == '#') {
    return false;
  }
  out = line;
  return true;
}

}  // namespace

SOGraph load_edge_list(std::istream& in, const std::string& context) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t num_arms = 0;
  std::size_t num_edges = 0;
  bool header_seen = false;
  std::vector<std::pair<Arm, Arm>> edges;

  while (std::getline(in, line)) {
    ++line_no;
    std::string data;
    if (!data_line(line, data)) {
      continue;
    }
    std::istringstream fields(data);
    if (!header_seen) {
      long long k = -1, m = -1;
      std::string extra;
      if (!(fields >> k >> m) || (fields >> extra) || k < 1 || m < 0) {
        parse_fail(context, line_no, "expected header \"K M\" with K >= 1");
      }
      num_arms = static_cast<std::size_t>(k);
      num_edges = static_cast<std::size_t>(m);
      header_seen = true;
      continue;
    }
    if (edges.size() == num_edges) {
      parse_fail(context, line_no,
                 "more edges than the header's count of " +
                     std::to_string(num_edges));
    }
    long long u = -1, v = -1;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra) || u < 0 || v < 0) {
      parse_fail(context, line_no, "expected edge line \"u v\"");
    }
    if (static_cast<std::size_t>(u) >= num_arms ||
        static_cast<std::size_t>(v) >= num_arms) {
      parse_fail(context, line_no,
                 "edge endpoint out of range for " + std::to_string(num_arms) +
                     " arms");
    }
    if (u == v) {
      parse_fail(context, line_no, "self-loop rejected");
    }
    edges.emplace_back(static_cast<Arm>(u), static_cast<Arm>(v));
  }
  if (!header_seen) {
    parse_fail(context, line_no, "missing \"K M\" header");
  }
  if (edges.size() != num_edges) {
    parse_fail(context, line_no,
               "found " + std::to_string(edges.size()) + " edges, header said " +
                   std::to_string(num_edges));
  }
  return build_graph(num_arms, edges);
}

SOGraph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open edge-list file: " + path);
  }
  return load_edge_list(in, path);
}

SOGraph induced_subgraph(const SOGraph& graph,
                         const std::vector<Arm>& vertices) {
  const std::size_t k = graph.num_arms();
  if (vertices.empty()) {
    throw std::invalid_argument("induced_subgraph: empty vertex set");
  }
  constexpr Arm kAbsent = static_cast<Arm>(-1);
  std::vector<Arm> remap(k, kAbsent);
  for (std::size_t pos = 0; pos < vertices.size(); ++pos) {
    const Arm v = vertices[pos];
    if (v >= k) {
      throw std::invalid_argument("induced_subgraph: vertex out of range");
    }
    if (pos > 0 && vertices[pos - 1] >= v) {
      throw std::invalid_argument(
          "induced_subgraph: vertices must be sorted and unique");
    }
    remap[v] = pos;
  }
  std::vector<std::pair<Arm, Arm>> edges;
  for (Arm u : vertices) {
    for (Arm w : graph.neighbors(u)) {
      if (w > u && remap[w] != kAbsent) {
        edges.emplace_back(remap[u], remap[w]);
      }
    }
  }
  return SOGraph(vertices.size(), edges);
}

CliqueCover reindex_cover_to_covered(const CliqueCover& cover) {
  CliqueCover out;
  out.coverage_fraction = cover.coverage_fraction;
  std::vector<Arm> remap;
  if (!cover.covered.empty()) {
    remap.assign(cover.covered.back() + 1, 0);
    for (std::size_t pos = 0; pos < cover.covered.size(); ++pos) {
      remap[cover.covered[pos]] = pos;
    }
  }
  for (const Clique& c : cover.cliques) {
    Clique mapped;
    mapped.members.reserve(c.members.size());
    for (Arm m : c.members) {
      mapped.members.push_back(remap[m]);
    }
    std::sort(mapped.members.begin(), mapped.members.end());
    out.cliques.push_back(std::move(mapped));
  }
  out.covered.resize(cover.covered.size());
  std::iota(out.covered.begin(), out.covered.end(), Arm{0});
  return out;
}

void write_cover(const CliqueCover& cover, std::ostream& out) {
  for (const Clique& c : cover.cliques) {
    for (std::size_t pos = 0; pos < c.members.size(); ++pos) {
      if (pos > 0) {
        out << ' ';
      }
      out << c.members[pos];
    }
    out << '\n';
  }
}

}  // namespace sobandit
