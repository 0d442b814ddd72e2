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

#include <catch2/catch_amalgamated.hpp>

#include "abqc/graph.hpp"

using abqc::Graph;

TEST_CASE("graph construction validates input") {
  REQUIRE_THROWS_AS(Graph(0, {}), std::invalid_argument);
  REQUIRE_THROWS_AS(Graph(2, {{0, 0}}), std::invalid_argument);
  REQUIRE_THROWS_AS(Graph(2, {{0, 2}}), std::invalid_argument);
  REQUIRE_THROWS_AS(Graph(2, {{0, 1}, {1, 0}}), std::invalid_argument);
  REQUIRE_THROWS_AS(Graph(3, {{-1, 1}}), std::invalid_argument);
}

TEST_CASE("neighbor lookup is consistent with the edge set") {
  Graph g = Graph::path(3);
  REQUIRE(g.neighbors(0) == std::vector<int>{1});
  REQUIRE(g.neighbors(1) == std::vector<int>{0, 2});
  REQUIRE(g.neighbors(2) == std::vector<int>{1});
  REQUIRE(g.has_edge(0, 1));
  REQUIRE(g.has_edge(1, 0));
  REQUIRE(!g.has_edge(0, 2));
  REQUIRE_THROWS_AS(g.neighbors(3), std::out_of_range);
}

TEST_CASE("presets") {
  REQUIRE(Graph::empty(4).edges().empty());
  REQUIRE(Graph::cycle(5).edges().size() == 5);
  REQUIRE(Graph::complete(4).edges().size() == 6);
  REQUIRE(Graph::path(1).edges().empty());
  REQUIRE(Graph::cycle(3) == Graph::complete(3));
}

TEST_CASE("connectivity") {
  REQUIRE(Graph::path(4).connected());
  REQUIRE(!Graph(3, {{0, 1}}).connected());
  REQUIRE(Graph::empty(1).connected());
  REQUIRE(!Graph::empty(2).connected());
}

TEST_CASE("text format round-trips and accepts comments") {
  std::string text = "# a triangle\n3\n0 1\n1 2  # second edge\n0 2\n";
  Graph g = Graph::parse(text);
  REQUIRE(g.vertex_count() == 3);
  REQUIRE(g.edges().size() == 3);
  Graph again = Graph::parse(g.to_text());
  REQUIRE(again == g);

  REQUIRE_THROWS_AS(Graph::parse(std::string("# only comments\n")), std::invalid_argument);
  REQUIRE_THROWS_AS(Graph::parse(std::string("2\n0\n")), std::invalid_argument);
  REQUIRE_THROWS_AS(Graph::parse(std::string("2 3\n")), std::invalid_argument);
}
