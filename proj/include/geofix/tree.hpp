#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace geofix {

// Finite weighted combinatorial tree. Vertices are named; points live on
// edges as (edge id, offset from the edge's first endpoint). All vertex-pair
// distances and next hops are precomputed at construction.
class MetricTree {
 public:
  struct Edge {
    int u = 0;
    int v = 0;
    double length = 0.0;
  };

  MetricTree(std::vector<std::string> vertex_names, std::vector<Edge> edges);

  int vertex_count() const noexcept { return static_cast<int>(names_.size()); }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const Edge& edge(int id) const;
  const std::string& vertex_name(int id) const;
  int vertex_id(const std::string& name) const;  // throws DomainError if unknown

  double vertex_distance(int a, int b) const;
  // First vertex after `a` on the unique path from `a` to `b`.
  int next_hop(int a, int b) const;
  // Edge joining two adjacent vertices; throws if not adjacent.
  int edge_between(int a, int b) const;
  const std::vector<int>& incident_edges(int vertex) const;

  bool induces_connected_subgraph(std::span<const int> vertices) const;

  double total_edge_length() const noexcept { return total_length_; }

 private:
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, int> name_to_id_;
  std::vector<std::vector<int>> incident_;
  std::vector<double> dist_;    // vertex_count^2
  std::vector<int> hop_;        // vertex_count^2
  double total_length_ = 0.0;
};

}  // namespace geofix
