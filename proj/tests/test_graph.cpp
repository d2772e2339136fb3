#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "netstab/errors.hpp"
#include "netstab/graph.hpp"
#include "oracles.hpp"

using namespace netstab;

namespace {

Graph parse(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in).graph;
}

LoadResult parse_with_stats(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in);
}

// Edge set over labels, independent of id assignment.
std::set<std::pair<std::string, std::string>> label_edges(const Graph& g) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& [u, v] : g.edges()) {
    std::string a = g.label(u);
    std::string b = g.label(v);
    if (b < a) std::swap(a, b);
    out.emplace(std::move(a), std::move(b));
  }
  return out;
}

}  // namespace

TEST_CASE("load assigns dense ids in first-appearance order") {
  const Graph g = parse("a b\nb c\n");
  REQUIRE(g.node_count() == 3);
  REQUIRE(g.edge_count() == 2);
  CHECK(g.label(0) == "a");
  CHECK(g.label(1) == "b");
  CHECK(g.label(2) == "c");
  CHECK(g.node_by_label("b") == NodeId{1});
  CHECK_FALSE(g.node_by_label("zzz").has_value());
  CHECK(g.degree(0) == 1);
  CHECK(g.degree(1) == 2);
  CHECK(g.degree(2) == 1);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 0));
  CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("load drops self loops and duplicates, counting them") {
  const auto [g, stats] = parse_with_stats("a b\nb a\na a\n");
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(stats.self_loops_dropped == 1);
  CHECK(stats.duplicate_edges_dropped == 1);
}

TEST_CASE("load skips blanks, comments, and CR line endings") {
  const Graph g = parse("# header\r\n\n  \t\na b\r\n   # indented comment\nb c\n");
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
}

TEST_CASE("load rejects malformed lines with their line number") {
  SUBCASE("one token") {
    std::istringstream in("a b\nc\n");
    try {
      load_edge_list(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(std::string(e.what()).find("two node tokens") !=
            std::string::npos);
    }
  }
  SUBCASE("three tokens") {
    std::istringstream in("a b c\n");
    try {
      load_edge_list(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
    }
  }
  SUBCASE("no edges at all") {
    for (const std::string& text : {std::string{}, std::string{"# only\n\n"}}) {
      std::istringstream in(text);
      try {
        load_edge_list(in);
        FAIL("expected ParseError");
      } catch (const ParseError& e) {
        CHECK(e.line() == 0);
      }
    }
  }
}

TEST_CASE("node accessors reject out-of-range ids") {
  const Graph g = parse("a b\n");
  CHECK_THROWS_AS(g.degree(2), std::out_of_range);
  CHECK_THROWS_AS(g.label(2), std::out_of_range);
  CHECK_THROWS_AS(g.neighbors(99), std::out_of_range);
  CHECK_THROWS_AS(g.has_edge(0, 2), std::out_of_range);
}

TEST_CASE("from_edges canonicalizes and keeps isolated nodes") {
  const std::vector<std::pair<NodeId, NodeId>> edges = {
      {1, 0}, {0, 1}, {2, 2}, {0, 2}};
  const Graph g = Graph::from_edges({"x", "y", "z", "lonely"}, edges);
  CHECK(g.node_count() == 4);
  CHECK(g.edge_count() == 2);
  CHECK(g.degree(3) == 0);
  CHECK(g.neighbors(3).empty());
  const std::vector<std::pair<NodeId, NodeId>> want = {{0, 1}, {0, 2}};
  CHECK(g.edges() == want);
  CHECK_THROWS_AS(
      Graph::from_edges({"x"}, std::vector<std::pair<NodeId, NodeId>>{{0, 1}}),
      std::out_of_range);
}

TEST_CASE("save emits sorted canonical edges and round-trips") {
  const Graph g = parse("c a\na b\n");
  std::ostringstream out;
  save_edge_list(g, out);
  // c=0, a=1, b=2; canonical edges sorted by id: (0,1)=(c,a), (1,2)=(a,b).
  CHECK(out.str() == "c a\na b\n");

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph r = oracle::random_graph(seed, 30, 0.15);
    std::ostringstream text;
    save_edge_list(r, text);
    if (r.edge_count() == 0) continue;
    const Graph back = parse(text.str());
    CHECK(label_edges(back) == label_edges(r));
  }
}

TEST_CASE("neighbor lists are sorted and symmetric") {
  for (std::uint64_t seed = 10; seed < 20; ++seed) {
    const Graph g = oracle::random_graph(seed, 40, 0.2);
    std::size_t degree_total = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      const auto nb = g.neighbors(v);
      CHECK(std::is_sorted(nb.begin(), nb.end()));
      degree_total += nb.size();
      for (const auto u : nb) {
        CHECK(g.has_edge(u, v));
        const auto back = g.neighbors(u);
        CHECK(std::binary_search(back.begin(), back.end(), v));
      }
    }
    CHECK(degree_total == 2 * g.edge_count());
  }
}

TEST_CASE("common_neighbors counts the intersection and rejects u == v") {
  const Graph star = parse("hub a\nhub b\nhub c\n");
  CHECK(star.common_neighbors(1, 2) == 1);  // two leaves share the hub
  CHECK(star.common_neighbors(0, 1) == 0);  // hub and a leaf share nothing
  const Graph tri = parse("a b\nb c\nc a\n");
  CHECK(tri.common_neighbors(0, 1) == 1);
  const Graph path = parse("a b\nb c\nc d\n");
  CHECK(path.common_neighbors(0, 3) == 0);
  CHECK(path.common_neighbors(0, 2) == 1);
  CHECK_THROWS_AS(path.common_neighbors(1, 1), std::invalid_argument);
}

TEST_CASE("assortativity matches hand values on tiny fixtures") {
  // Path a-b-c: every edge joins degree 1 to degree 2, perfectly
  // disassortative.
  CHECK(parse("a b\nb c\n").assortativity() == -1.0);
  // Stars likewise: hub degree n-1 against leaves of degree 1.
  CHECK(parse("h a\nh b\nh c\n").assortativity() == -1.0);
  CHECK(parse("h a\nh b\nh c\nh d\nh e\n").assortativity() == -1.0);
}

TEST_CASE("assortativity is undefined exactly when degrees cannot vary") {
  // Regular graphs: both endpoint degree lists are constant.
  CHECK_FALSE(parse("a b\nb c\nc d\nd a\n").assortativity().has_value());  // C4
  CHECK_FALSE(parse("a b\nb c\nc a\n").assortativity().has_value());      // K3
  CHECK_FALSE(parse("a b\n").assortativity().has_value());  // single edge
  // No edges at all.
  const Graph empty = Graph::from_edges(
      {"x", "y"}, std::vector<std::pair<NodeId, NodeId>>{});
  CHECK_FALSE(empty.assortativity().has_value());
  // Isolated nodes must not mask the degenerate case: C4 plus a loner.
  const Graph c4_plus = Graph::from_edges(
      {"a", "b", "c", "d", "e"},
      std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK_FALSE(c4_plus.assortativity().has_value());
}

TEST_CASE("assortativity agrees with a direct Pearson computation") {
  for (std::uint64_t seed = 100; seed < 150; ++seed) {
    const Graph g = oracle::random_graph(seed, 35, 0.12);
    const auto got = g.assortativity();
    const auto want = oracle::assortativity(g);
    REQUIRE(got.has_value() == want.has_value());
    if (got) {
      CHECK(*got == doctest::Approx(*want).epsilon(1e-9));
      CHECK(*got >= -1.0 - 1e-12);
      CHECK(*got <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("a mid-sized circulant graph loads at full scale") {
  // 183 nodes; strides 1..13 plus a partial stride 14 give 2494 edges.
  std::ostringstream text;
  const int n = 183;
  for (int s = 1; s <= 13; ++s) {
    for (int i = 0; i < n; ++i) {
      text << "v" << i << " v" << (i + s) % n << "\n";
    }
  }
  for (int i = 0; i < 115; ++i) {
    text << "v" << i << " v" << (i + 14) % n << "\n";
  }
  const Graph g = parse(text.str());
  CHECK(g.node_count() == 183);
  CHECK(g.edge_count() == 2494);
  std::size_t total = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) total += g.degree(v);
  CHECK(total == 2 * g.edge_count());
  const auto r = g.assortativity();
  REQUIRE(r.has_value());
  const auto want = oracle::assortativity(g);
  CHECK(*r == doctest::Approx(*want).epsilon(1e-9));
}

TEST_CASE("degree_sequence lists per-node degrees in id order") {
  const Graph g = parse("a b\nb c\nb d\n");
  const std::vector<std::size_t> want = {1, 3, 1, 1};
  CHECK(g.degree_sequence() == want);
}

TEST_CASE("file loader reports missing files as IoError") {
  CHECK_THROWS_AS(load_edge_list_file("/nonexistent/nope.txt"), IoError);
  CHECK_THROWS_AS(
      save_edge_list_file(parse("a b\n"), "/nonexistent/dir/out.txt"),
      IoError);
}
