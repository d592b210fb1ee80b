#pragma once

// Inputs of the classic problems that the instance generators reduce from.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rbsc/error.hpp"

namespace rbsc {

/// Universe [1, n], a family of subsets and a budget k.
struct SetCoverInstance {
  std::uint32_t n = 0;
  std::vector<std::vector<std::uint32_t>> sets;  // each sorted, elements in [1, n]
  std::uint64_t k = 0;

  void check() const {
    for (std::size_t i = 0; i < sets.size(); ++i) {
      for (auto e : sets[i]) {
        if (e < 1 || e > n) {
          throw Error(ErrorCode::Semantic, "set cover set " + std::to_string(i) + " has element " +
                                               std::to_string(e) + " outside [1, " + std::to_string(n) + "]");
        }
      }
    }
  }
};

struct MulticoloredGraph {
  struct Vertex {
    std::uint32_t id;
    std::uint32_t color;  // 1-based class index
  };

  std::uint32_t classes = 0;
  std::vector<Vertex> vertices;                                  // sorted by id
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;    // u < v, sorted, unique

  const Vertex* find(std::uint32_t id) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), id, [](const Vertex& v, std::uint32_t key) { return v.id < key; });
    return (it != vertices.end() && it->id == id) ? &*it : nullptr;
  }

  /// Vertex ids of class `color` in ascending order.
  std::vector<std::uint32_t> class_members(std::uint32_t color) const {
    std::vector<std::uint32_t> out;
    for (const auto& v : vertices) {
      if (v.color == color) out.push_back(v.id);
    }
    return out;
  }

  bool adjacent(std::uint32_t u, std::uint32_t v) const {
    auto key = std::minmax(u, v);
    return std::binary_search(edges.begin(), edges.end(), std::pair<std::uint32_t, std::uint32_t>(key.first, key.second));
  }

  std::map<std::uint32_t, std::size_t> degrees() const {
    std::map<std::uint32_t, std::size_t> deg;
    for (const auto& v : vertices) deg[v.id] = 0;
    for (auto [u, v] : edges) {
      ++deg[u];
      ++deg[v];
    }
    return deg;
  }

  /// The common degree if the graph is regular.
  std::optional<std::size_t> regular_degree() const {
    auto deg = degrees();
    if (deg.empty()) return 0;
    std::size_t d = deg.begin()->second;
    for (const auto& [_, dv] : deg) {
      if (dv != d) return std::nullopt;
    }
    return d;
  }

  /// Sorts, deduplicates and checks the class structure.
  void normalize() {
    std::sort(vertices.begin(), vertices.end(), [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < vertices.size(); ++i) {
      if (vertices[i - 1].id == vertices[i].id) throw Error(ErrorCode::Semantic, "duplicate vertex " + std::to_string(vertices[i].id));
    }
    for (const auto& v : vertices) {
      if (v.color < 1 || v.color > classes) {
        throw Error(ErrorCode::Semantic, "vertex " + std::to_string(v.id) + " has class outside [1, " + std::to_string(classes) + "]");
      }
    }
    for (auto& [u, v] : edges) {
      if (u > v) std::swap(u, v);
      const Vertex* a = find(u);
      const Vertex* b = find(v);
      if (!a || !b) throw Error(ErrorCode::Semantic, "edge references unknown vertex");
      if (u == v) throw Error(ErrorCode::Semantic, "self loop at vertex " + std::to_string(u));
      if (a->color == b->color) {
        throw Error(ErrorCode::Semantic, "edge " + std::to_string(u) + "-" + std::to_string(v) + " inside class " + std::to_string(a->color));
      }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
};

}  // namespace rbsc
