// Copyright 2026 The abqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ABQC_GRAPH_HPP
#define ABQC_GRAPH_HPP

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace abqc {

/// A simple undirected graph on vertices 0..n-1. Defines the graph state |G>
/// and its stabilizer generators g_i = X_i prod_{j in N(i)} Z_j.
class Graph {
 public:
  Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n), adj_(static_cast<size_t>(std::max(n, 0))) {
    if (n < 1) {
      throw std::invalid_argument("Graph: vertex count must be positive");
    }
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n || v >= n) {
        throw std::invalid_argument("Graph: edge endpoint out of range");
      }
      if (u == v) {
        throw std::invalid_argument("Graph: self-loops are not allowed");
      }
      if (u > v) {
        std::swap(u, v);
      }
      if (!seen.insert({u, v}).second) {
        throw std::invalid_argument("Graph: duplicate edge");
      }
    }
    edges_.assign(seen.begin(), seen.end());
    for (auto [u, v] : edges_) {
      adj_[static_cast<size_t>(u)].push_back(v);
      adj_[static_cast<size_t>(v)].push_back(u);
    }
    for (auto& nbrs : adj_) {
      std::sort(nbrs.begin(), nbrs.end());
    }
  }

  int vertex_count() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  const std::vector<int>& neighbors(int v) const {
    check_vertex(v);
    return adj_[static_cast<size_t>(v)];
  }

  bool has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    const auto& nbrs = adj_[static_cast<size_t>(u)];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
  }

  bool connected() const {
    std::vector<bool> visited(static_cast<size_t>(n_), false);
    std::vector<int> stack{0};
    visited[0] = true;
    int count = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj_[static_cast<size_t>(v)]) {
        if (!visited[static_cast<size_t>(w)]) {
          visited[static_cast<size_t>(w)] = true;
          count++;
          stack.push_back(w);
        }
      }
    }
    return count == n_;
  }

  static Graph empty(int n) { return Graph(n, {}); }

  static Graph path(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) {
      edges.emplace_back(i, i + 1);
    }
    return Graph(n, std::move(edges));
  }

  static Graph cycle(int n) {
    if (n < 3) {
      throw std::invalid_argument("Graph::cycle: need at least 3 vertices");
    }
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
      edges.emplace_back(i, (i + 1) % n);
    }
    return Graph(n, std::move(edges));
  }

  static Graph complete(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        edges.emplace_back(i, j);
      }
    }
    return Graph(n, std::move(edges));
  }

  // Text format: first line `n`, one `u v` pair per line, `#` starts a comment.
  static Graph parse(std::istream& in) {
    int n = -1;
    std::vector<std::pair<int, int>> edges;
    std::string line;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) {
        line.erase(hash);
      }
      std::istringstream ls(line);
      if (n < 0) {
        if (ls >> n) {
          int extra;
          if (ls >> extra) {
            throw std::invalid_argument("Graph::parse: expected a single vertex count on the first line");
          }
        }
        continue;
      }
      int u, v;
      if (ls >> u) {
        if (!(ls >> v)) {
          throw std::invalid_argument("Graph::parse: edge line needs two endpoints");
        }
        edges.emplace_back(u, v);
      }
    }
    if (n < 0) {
      throw std::invalid_argument("Graph::parse: missing vertex count");
    }
    return Graph(n, std::move(edges));
  }

  static Graph parse(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
  }

  void write(std::ostream& out) const {
    out << n_ << "\n";
    for (auto [u, v] : edges_) {
      out << u << " " << v << "\n";
    }
  }

  std::string to_text() const {
    std::ostringstream out;
    write(out);
    return out.str();
  }

  bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= n_) {
      throw std::out_of_range("Graph: vertex out of range");
    }
  }

  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
};

}  // namespace abqc

#endif  // ABQC_GRAPH_HPP
