#include "geofix/tree.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "geofix/errors.hpp"

namespace geofix {

MetricTree::MetricTree(std::vector<std::string> vertex_names, std::vector<Edge> edges)
    : names_(std::move(vertex_names)), edges_(std::move(edges)) {
  const int n = static_cast<int>(names_.size());
  if (n == 0) throw DomainError("metric tree needs at least one vertex");
  if (static_cast<int>(edges_.size()) != n - 1) {
    throw DomainError("metric tree needs exactly vertex_count - 1 edges");
  }
  for (int i = 0; i < n; ++i) {
    if (!name_to_id_.emplace(names_[i], i).second) {
      throw DomainError("duplicate vertex name: " + names_[i]);
    }
  }
  incident_.assign(n, {});
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    const Edge& ed = edges_[e];
    if (ed.u < 0 || ed.u >= n || ed.v < 0 || ed.v >= n || ed.u == ed.v) {
      throw DomainError("edge endpoints out of range");
    }
    if (!(ed.length > 0.0)) throw DomainError("edge lengths must be positive");
    incident_[ed.u].push_back(e);
    incident_[ed.v].push_back(e);
    total_length_ += ed.length;
  }

  dist_.assign(static_cast<std::size_t>(n) * n, -1.0);
  hop_.assign(static_cast<std::size_t>(n) * n, -1);
  for (int root = 0; root < n; ++root) {
    std::deque<int> queue{root};
    dist_[static_cast<std::size_t>(root) * n + root] = 0.0;
    hop_[static_cast<std::size_t>(root) * n + root] = root;
    while (!queue.empty()) {
      int cur = queue.front();
      queue.pop_front();
      for (int e : incident_[cur]) {
        const Edge& ed = edges_[e];
        int nxt = ed.u == cur ? ed.v : ed.u;
        std::size_t idx = static_cast<std::size_t>(root) * n + nxt;
        if (dist_[idx] >= 0.0) continue;
        dist_[idx] = dist_[static_cast<std::size_t>(root) * n + cur] + ed.length;
        hop_[idx] = cur == root ? nxt : hop_[static_cast<std::size_t>(root) * n + cur];
        queue.push_back(nxt);
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    if (dist_[v] < 0.0) throw DomainError("edge list does not connect all vertices");
  }
}

const MetricTree::Edge& MetricTree::edge(int id) const {
  if (id < 0 || id >= edge_count()) throw DomainError("edge id out of range");
  return edges_[static_cast<std::size_t>(id)];
}

const std::string& MetricTree::vertex_name(int id) const {
  if (id < 0 || id >= vertex_count()) throw DomainError("vertex id out of range");
  return names_[static_cast<std::size_t>(id)];
}

int MetricTree::vertex_id(const std::string& name) const {
  auto it = name_to_id_.find(name);
  if (it == name_to_id_.end()) throw DomainError("unknown vertex name: " + name);
  return it->second;
}

double MetricTree::vertex_distance(int a, int b) const {
  const int n = vertex_count();
  if (a < 0 || a >= n || b < 0 || b >= n) throw DomainError("vertex id out of range");
  return dist_[static_cast<std::size_t>(a) * n + b];
}

int MetricTree::next_hop(int a, int b) const {
  const int n = vertex_count();
  if (a < 0 || a >= n || b < 0 || b >= n) throw DomainError("vertex id out of range");
  return hop_[static_cast<std::size_t>(a) * n + b];
}

int MetricTree::edge_between(int a, int b) const {
  for (int e : incident_[static_cast<std::size_t>(a)]) {
    const Edge& ed = edges_[static_cast<std::size_t>(e)];
    if ((ed.u == a && ed.v == b) || (ed.u == b && ed.v == a)) return e;
  }
  throw DomainError("vertices are not adjacent");
}

const std::vector<int>& MetricTree::incident_edges(int vertex) const {
  if (vertex < 0 || vertex >= vertex_count()) throw DomainError("vertex id out of range");
  return incident_[static_cast<std::size_t>(vertex)];
}

bool MetricTree::induces_connected_subgraph(std::span<const int> vertices) const {
  if (vertices.empty()) return false;
  std::set<int> member(vertices.begin(), vertices.end());
  for (int v : member) {
    if (v < 0 || v >= vertex_count()) return false;
  }
  std::deque<int> queue{*member.begin()};
  std::set<int> seen{*member.begin()};
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (int e : incident_[static_cast<std::size_t>(cur)]) {
      const Edge& ed = edges_[static_cast<std::size_t>(e)];
      int nxt = ed.u == cur ? ed.v : ed.u;
      if (member.count(nxt) && !seen.count(nxt)) {
        seen.insert(nxt);
        queue.push_back(nxt);
      }
    }
  }
  return seen.size() == member.size();
}

}  // namespace geofix
