#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "common.hpp"
#include "evenshell/multigraph.hpp"

using namespace evenshell;

namespace {

std::set<std::string> names(const Multigraph& g, const std::vector<Mask>& sets)
{
	std::set<std::string> out;
	for (Mask s : sets)
		out.insert(set_to_string(g, s));
	return out;
}

// Components of the vertices of s using edges whose endpoints and (for
// bundles) at least one label lie in s; a flood fill independent of the library.
std::vector<Mask> oracle_vertex_components(const Multigraph& g, Mask s)
{
	int n = g.n();
	std::vector<std::vector<int>> adj(n);
	for (auto [u, v] : g.simple_edges())
		if (has(s, u) && has(s, v)) {
			adj[u].push_back(v);
			adj[v].push_back(u);
		}
	for (const Bundle& b : g.bundles())
		if (has(s, b.u) && has(s, b.v) && (s & b.mask)) {
			adj[b.u].push_back(b.v);
			adj[b.v].push_back(b.u);
		}
	std::vector<int> comp(n, -1);
	std::vector<Mask> out;
	for (int v = 0; v < n; ++v) {
		if (!has(s, v) || comp[v] >= 0)
			continue;
		Mask c = 0;
		std::vector<int> stack{v};
		comp[v] = static_cast<int>(out.size());
		while (!stack.empty()) {
			int x = stack.back();
			stack.pop_back();
			c |= bit(x);
			for (int y : adj[x])
				if (comp[y] < 0) {
					comp[y] = comp[v];
					stack.push_back(y);
				}
		}
		out.push_back(c);
	}
	return out;
}

// Admissibility straight from the definition, over every subset of the ground set.
std::vector<Mask> oracle_admissible(const Multigraph& h)
{
	std::vector<Mask> out;
	auto comps = oracle_vertex_components(h, h.ground());
	for (Mask a = 0; a < bit(h.ground_size()); ++a) {
		bool ok = true;
		for (Mask c : comps) {
			if (popcount(a & c) % 2)
				ok = false;
			for (int v = 0; v < h.n(); ++v) {
				if (!has(c, v))
					continue;
				bool only_simple = true;
				for (const Bundle& b : h.bundles())
					if (b.u == v || b.v == v)
						only_simple = false;
				if (only_simple && !has(a, v))
					ok = false;
			}
		}
		for (const Bundle& b : h.bundles()) {
			int k = popcount(a & b.mask);
			if (k == 0 || k % 2)
				ok = false;
		}
		if (ok)
			out.push_back(a);
	}
	return out;
}

}  // namespace

TEST(Multigraph, ParsesSmallestBundle)
{
	auto g = parse_graph("vertices 2\nedge 1 2 a\nedge 1 2 b\n");
	ASSERT_EQ(g.bundles().size(), 1u);
	EXPECT_EQ(g.bundles()[0].labels.size(), 2u);
	EXPECT_TRUE(g.simple_edges().empty());
}

TEST(Multigraph, GroundSetOfTwoBundleGraph)
{
	auto g = fixtures::graph("fig3_g.graph");
	EXPECT_EQ(g.bundles().size(), 2u);
	EXPECT_EQ(set_to_string(g, g.ground()), "1234abcde");
}

TEST(Multigraph, RejectsMalformedInput)
{
	EXPECT_THROW(parse_graph("edge 1 1\n"), GraphError);
	EXPECT_THROW(parse_graph("vertices 2\nedge 1 2 a\nedge 1 2 a\n"), GraphError);
	EXPECT_THROW(parse_graph("vertices 2\nedge 1 2 a\nedge 1 2\n"), GraphError);
	EXPECT_THROW(parse_graph("vertices 2\nedge 1 2 a\n"), GraphError);
	EXPECT_THROW(parse_graph("vertex 2\n"), GraphError);
}

TEST(Multigraph, FormatRoundTrips)
{
	auto g = fixtures::graph("fig3_g.graph");
	auto h = parse_graph(format_graph(g));
	EXPECT_EQ(format_graph(h), format_graph(g));
}

TEST(Multigraph, Components)
{
	auto g = fixtures::graph("fig3_g.graph");
	EXPECT_EQ(components(g).size(), 1u);
	auto two = parse_graph("vertices 3\nedge 1 2 a\nedge 1 2 b\n");
	EXPECT_EQ(components(two).size(), 2u);
	Mask i2 = parse_set(g, "1 3 4");
	auto cs = component_masks(g, i2);
	EXPECT_EQ(names(g, cs), (std::set<std::string>{"1", "34"}));
}

TEST(Multigraph, SemiInduced)
{
	auto g = fixtures::graph("fig3_g.graph");
	EXPECT_TRUE(is_semi_induced(g, parse_set(g, "1 2 3 4 a c")));
	EXPECT_FALSE(is_semi_induced(g, parse_set(g, "1 2")));
	EXPECT_TRUE(is_semi_induced(g, 0));
	EXPECT_THROW(is_semi_induced(g, bit(20)), GraphError);
}

TEST(Multigraph, ComponentsAgreeWithFloodFill)
{
	for (const char* name : {"fig3_g.graph", "fig4i.graph", "fig10.graph", "fig2_p8m2.graph"}) {
		auto g = fixtures::graph(name);
		for (Mask s = 0; s < bit(g.ground_size()); ++s) {
			if (!is_semi_induced(g, s))
				continue;
			std::set<Mask> lib, ora;
			for (Mask c : component_masks(g, s))
				lib.insert(c & g.vertex_mask());
			for (Mask c : oracle_vertex_components(g, s))
				ora.insert(c);
			ASSERT_EQ(lib, ora) << name << " " << set_to_string(g, s);
		}
	}
}

TEST(Multigraph, PiGraphsOfTwoBundleGraph)
{
	auto g = fixtures::graph("fig3_g.graph");
	auto pis = enumerate_pi_graphs(g);
	std::set<std::string> seen;
	for (const auto& p : pis)
		seen.insert(format_graph(p.graph));
	for (const char* h : {"fig3_h1.graph", "fig3_h2.graph", "fig3_h3.graph", "fig3_h4.graph", "fig3_h5.graph",
	                      "fig3_h6.graph"}) {
		auto hg = fixtures::graph(h);
		EXPECT_TRUE(seen.count(format_graph(hg))) << h;
	}
}

TEST(Multigraph, PiGraphsOfDoubleEdge)
{
	auto g = parse_graph("vertices 2\nedge 1 2 a\nedge 1 2 b\n");
	// vertex subsets × replacement choices for the present bundle
	EXPECT_EQ(enumerate_pi_graphs(g).size(), 5u);
}

TEST(Multigraph, PiGraphsOfSimpleGraphAreInducedSubgraphs)
{
	auto g = fixtures::graph("fig3_h1.graph");
	EXPECT_EQ(enumerate_pi_graphs(g).size(), 16u);
}

TEST(Multigraph, AdmissibleSetsOfFixtureGraphs)
{
	auto h2 = fixtures::graph("fig3_h2.graph");
	EXPECT_EQ(names(h2, enumerate_admissible(h2)), (std::set<std::string>{"34ab", "1234ab"}));
	auto h3 = fixtures::graph("fig3_h3.graph");
	EXPECT_EQ(names(h3, enumerate_admissible(h3)),
	          (std::set<std::string>{"14cd", "14ce", "14de", "1234cd", "1234ce", "1234de"}));
	EXPECT_TRUE(enumerate_admissible(fixtures::graph("fig3_h4.graph")).empty());
	auto h5 = fixtures::graph("fig3_h5.graph");
	EXPECT_EQ(names(h5, enumerate_admissible(h5)), (std::set<std::string>{"13ab", "23ab"}));
	auto h6 = fixtures::graph("fig3_h6.graph");
	EXPECT_EQ(names(h6, enumerate_admissible(h6)),
	          (std::set<std::string>{"12cd", "12ce", "12de", "13cd", "13ce", "13de"}));
	auto h1 = fixtures::graph("fig3_h1.graph");
	EXPECT_EQ(names(h1, enumerate_admissible(h1)), (std::set<std::string>{"1234"}));
}

TEST(Multigraph, AdmissibleMatchesSubsetOracle)
{
	auto g = fixtures::graph("fig3_g.graph");
	int checked = 0;
	for (const auto& p : enumerate_pi_graphs(g)) {
		if (p.graph.ground_size() > 12)
			continue;
		auto lib = enumerate_admissible(p.graph);
		auto ora = oracle_admissible(p.graph);
		std::sort(lib.begin(), lib.end());
		ASSERT_EQ(lib, ora) << format_graph(p.graph);
		for (Mask a : ora)
			EXPECT_TRUE(is_admissible(p.graph, a));
		++checked;
	}
	EXPECT_GT(checked, 20);
	for (const char* name : {"fig4i.graph", "fig4ii.graph", "fig10.graph", "fig11.graph"}) {
		auto h = fixtures::graph(name);
		auto lib = enumerate_admissible(h);
		std::sort(lib.begin(), lib.end());
		EXPECT_EQ(lib, oracle_admissible(h)) << name;
	}
}

TEST(Multigraph, AStar)
{
	auto g = fixtures::graph("fig3_g.graph");
	std::set<std::pair<std::string, std::string>> pairs;
	for (const auto& ap : a_star(g))
		pairs.insert({format_graph(ap.pi.graph), set_to_string(ap.pi.graph, ap.admissible)});
	EXPECT_TRUE(pairs.count({format_graph(fixtures::graph("fig3_h2.graph")), "1234ab"}));
	EXPECT_TRUE(pairs.count({format_graph(fixtures::graph("fig3_h3.graph")), "1234cd"}));

	auto empty = parse_graph("vertices 0\n");
	auto e = a_star(empty);
	ASSERT_EQ(e.size(), 1u);
	EXPECT_EQ(e[0].admissible, 0u);

	auto simple = fixtures::graph("fig3_h1.graph");
	for (const auto& ap : a_star(simple)) {
		EXPECT_EQ(ap.admissible, ap.pi.graph.vertex_mask());
		for (Mask c : component_masks(ap.pi.graph, ap.pi.graph.ground()))
			EXPECT_EQ(popcount(c) % 2, 0);
	}
}

// A pair is in A*(G) iff its restriction to each component of G is.
TEST(Multigraph, AStarFactorsOverComponents)
{
	auto g = parse_graph("vertices 5\nedge 1 2 a\nedge 1 2 b\nedge 2 3\nedge 4 5\n");
	auto full = a_star(g);
	auto c1 = a_star(parse_graph("vertices 3\nedge 1 2 a\nedge 1 2 b\nedge 2 3\n"));
	auto c2 = a_star(parse_graph("vertices 2\nedge 1 2\n"));
	EXPECT_EQ(full.size(), c1.size() * c2.size());
}
