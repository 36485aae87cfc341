#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "multislice/core/composition.hpp"
#include "multislice/core/vertex.hpp"

namespace multislice {

/// Breadth-first search from rank 0; true when every vertex is reached.
inline bool is_connected(const Composition& k, const Limits& limits = {}) {
  VertexSet vs(k, limits);
  std::vector<char> seen(vs.size(), 0);
  std::queue<std::size_t> queue;
  seen[0] = 1;
  queue.push(0);
  std::size_t reached = 1;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop();
    vs.for_each_neighbor(v, [&](std::size_t, std::size_t, std::size_t w) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        queue.push(w);
      }
    });
  }
  return reached == vs.size();
}

/// Edges as rank pairs (u, v) with u < v, sorted.
inline std::vector<std::pair<std::size_t, std::size_t>> edges(
    const VertexSet& vs) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < vs.size(); ++u) {
    std::vector<std::size_t> adj;
    vs.for_each_neighbor(u, [&](std::size_t, std::size_t, std::size_t w) {
      if (w > u) adj.push_back(w);
    });
    std::sort(adj.begin(), adj.end());
    for (std::size_t w : adj) out.emplace_back(u, w);
  }
  return out;
}

/// One "u v" line per edge.
inline void write_edge_list(std::ostream& os, const VertexSet& vs) {
  for (auto [u, v] : edges(vs)) os << u << ' ' << v << '\n';
}

inline void write_dot(std::ostream& os, const VertexSet& vs) {
  os << "graph multislice {\n";
  os << "  // composition " << vs.composition().to_string() << "\n";
  for (std::size_t u = 0; u < vs.size(); ++u) {
    os << "  " << u << " [label=\"" << vs.vertex(u).to_string() << "\"];\n";
  }
  for (auto [u, v] : edges(vs)) os << "  " << u << " -- " << v << ";\n";
  os << "}\n";
}

inline nlohmann::json to_json(const Composition& k) { return k.to_vector(); }

inline Composition composition_from_json(const nlohmann::json& j) {
  require(j.is_array(), ErrorCode::Parse, "composition must be a JSON array");
  std::vector<int> counts;
  for (const auto& v : j) {
    require(v.is_number_integer(), ErrorCode::Parse,
            "composition entries must be integers");
    counts.push_back(v.get<int>());
  }
  return Composition(std::move(counts));
}

}  // namespace multislice
