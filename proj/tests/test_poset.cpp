#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "common.hpp"
#include "evenshell/evenposet.hpp"
#include "evenshell/homology.hpp"
#include "evenshell/poset.hpp"

using namespace evenshell;

namespace {

Poset chain(int n)
{
	return Poset::from_order(n, [](int x, int y) { return x <= y; });
}

Poset boolean_lattice(int k)
{
	return Poset::from_order(1 << k, [](int x, int y) { return (x & y) == x; });
}

// a < b, c < d, e < f with b, c both below d and e.
Poset cl_example()
{
	std::vector<std::pair<int, int>> covers{{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 5}, {4, 5}};
	std::vector<std::vector<bool>> le(6, std::vector<bool>(6, false));
	for (int i = 0; i < 6; ++i)
		le[i][i] = true;
	for (auto [x, y] : covers)
		le[x][y] = true;
	for (int k = 0; k < 6; ++k)
		for (int i = 0; i < 6; ++i)
			for (int j = 0; j < 6; ++j)
				if (le[i][k] && le[k][j])
					le[i][j] = true;
	Poset p = Poset::from_order(6, [&](int x, int y) { return static_cast<bool>(le[x][y]); });
	p.names = {"a", "b", "c", "d", "e", "f"};
	return p;
}

// Philip Hall: μ(x, y) is the alternating count of chains from x to y.
std::int64_t hall_mobius(const Poset& p, int x, int y)
{
	std::int64_t total = 0;
	std::function<void(int, int)> walk = [&](int z, int len) {
		if (z == y) {
			total += len % 2 ? -1 : 1;
			return;
		}
		for (int w = 0; w < p.size(); ++w)
			if (p.lt(z, w) && p.leq(w, y))
				walk(w, len + 1);
	};
	walk(x, 0);
	return total;
}

Poset random_bounded(std::mt19937& rng, int inner)
{
	// random order on inner elements by a random DAG closed transitively, plus 0̂ and 1̂
	int n = inner + 2;
	std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
	std::bernoulli_distribution coin(0.35);
	for (int i = 0; i < n; ++i)
		le[i][i] = true;
	for (int i = 1; i <= inner; ++i) {
		le[0][i] = le[i][n - 1] = true;
		for (int j = i + 1; j <= inner; ++j)
			if (coin(rng))
				le[i][j] = true;
	}
	le[0][n - 1] = true;
	for (int k = 0; k < n; ++k)
		for (int i = 0; i < n; ++i)
			for (int j = 0; j < n; ++j)
				if (le[i][k] && le[k][j])
					le[i][j] = true;
	return Poset::from_order(n, [&](int x, int y) { return static_cast<bool>(le[x][y]); });
}

}  // namespace

TEST(Poset, CoversAreTransitiveReduction)
{
	EXPECT_EQ(chain(3).covers().size(), 2u);
	EXPECT_EQ(boolean_lattice(2).covers().size(), 4u);
	Poset p = cl_example();
	std::set<std::pair<std::string, std::string>> got;
	for (auto [x, y] : p.covers())
		got.insert({p.names[x], p.names[y]});
	std::set<std::pair<std::string, std::string>> want{{"a", "b"}, {"a", "c"}, {"b", "d"}, {"b", "e"},
	                                                   {"c", "d"}, {"c", "e"}, {"d", "f"}, {"e", "f"}};
	EXPECT_EQ(got, want);
}

TEST(Poset, RejectsNonOrders)
{
	EXPECT_THROW(Poset::from_order(2, [](int, int) { return true; }), PosetError);
	EXPECT_THROW(Poset::from_order(2, [](int x, int y) { return x != y; }), PosetError);
	EXPECT_THROW(Poset::from_order(3, [](int x, int y) { return x == y || (x == 0 && y == 1) || (x == 1 && y == 2); }),
	             PosetError);
}

TEST(Poset, ClosureOfCoversReproducesOrder)
{
	std::mt19937 rng(7);
	for (int trial = 0; trial < 30; ++trial) {
		Poset p = random_bounded(rng, 6);
		std::vector<std::vector<bool>> le(p.size(), std::vector<bool>(p.size(), false));
		for (int i = 0; i < p.size(); ++i)
			le[i][i] = true;
		for (auto [x, y] : p.covers())
			le[x][y] = true;
		for (int k = 0; k < p.size(); ++k)
			for (int i = 0; i < p.size(); ++i)
				for (int j = 0; j < p.size(); ++j)
					if (le[i][k] && le[k][j])
						le[i][j] = true;
		for (int i = 0; i < p.size(); ++i)
			for (int j = 0; j < p.size(); ++j)
				ASSERT_EQ(le[i][j], p.leq(i, j));
	}
}

TEST(Poset, Intervals)
{
	Poset p = cl_example();
	EXPECT_EQ(interval(p, 2, 2).size(), 1);
	EXPECT_EQ(interval(p, 0, 5).size(), 6);
	EXPECT_THROW(interval(p, 1, 2), PosetError);

	auto g = fixtures::graph("fig4iii.graph");
	auto ep = even_poset(g, parse_set(g, "1 2 3 4 a1 a2"));
	ASSERT_TRUE(ep);
	int x = ep->index_of(parse_set(g, "1 3"));
	int y = ep->index_of(parse_set(g, "1 2 3 4 a1 a2"));
	ASSERT_GE(x, 0);
	ASSERT_GE(y, 0);
	Poset q = interval(ep->poset, x, y);
	std::set<std::string> got(q.names.begin(), q.names.end());
	EXPECT_EQ(got, (std::set<std::string>{"13", "123a1", "123a2", "1234a1a2"}));
	EXPECT_EQ(q.covers().size(), 4u);
}

TEST(Poset, ProductsMultiplyMobius)
{
	Poset d = product(chain(2), chain(2));
	EXPECT_EQ(d.size(), 4);
	EXPECT_EQ(d.covers().size(), 4u);
	Poset one = chain(1);
	Poset p = cl_example();
	Poset q = product(p, one);
	EXPECT_EQ(q.covers().size(), p.covers().size());
	std::mt19937 rng(11);
	for (int trial = 0; trial < 20; ++trial) {
		Poset a = random_bounded(rng, 3), b = random_bounded(rng, 3);
		Poset ab = product(a, b);
		ASSERT_TRUE(ab.bounded());
		EXPECT_EQ(hall_mobius(ab, ab.bottom(), ab.top()), mobius_invariant(a) * mobius_invariant(b));
		EXPECT_EQ(mobius_invariant(ab), mobius_invariant(a) * mobius_invariant(b));
		EXPECT_EQ(is_pure(ab), is_pure(a) && is_pure(b));
	}
}

TEST(Poset, Mobius)
{
	EXPECT_EQ(mobius_invariant(chain(1)), 1);
	EXPECT_EQ(mobius_invariant(chain(2)), -1);
	auto g = parse_graph("vertices 4\nedge 1 2\nedge 2 3\nedge 3 4\n");
	auto ep = even_poset(g, g.vertex_mask());
	ASSERT_TRUE(ep);
	EXPECT_EQ(mobius_invariant(ep->poset), 2);
	std::mt19937 rng(3);
	for (int trial = 0; trial < 30; ++trial) {
		Poset p = random_bounded(rng, 6);
		EXPECT_EQ(mobius_invariant(p), hall_mobius(p, p.bottom(), p.top()));
	}
}

TEST(Poset, MaximalChains)
{
	EXPECT_EQ(maximal_chains(cl_example()).size(), 4u);
	EXPECT_EQ(maximal_chains(chain(5)).size(), 1u);
	EXPECT_EQ(maximal_chains(boolean_lattice(2)).size(), 2u);
	EXPECT_EQ(maximal_chains(boolean_lattice(3)).size(), 6u);
}

TEST(Poset, TotalSemimodularity)
{
	EXPECT_TRUE(is_totally_semimodular(boolean_lattice(3)));
	auto p4 = parse_graph("vertices 4\nedge 1 2\nedge 2 3\nedge 3 4\n");
	auto ep = even_poset(p4, p4.vertex_mask());
	EXPECT_TRUE(is_pure(ep->poset));
	EXPECT_TRUE(is_totally_semimodular(ep->poset));
	auto g = fixtures::graph("fig4i.graph");
	auto e4 = even_poset(g, parse_set(g, "2 3 4 5 a1 a2"));
	EXPECT_FALSE(is_pure(e4->poset) && is_totally_semimodular(e4->poset));
	EXPECT_FALSE(is_totally_semimodular(e4->poset));
}

TEST(Poset, OrderComplex)
{
	auto k = order_complex(chain(3));
	ASSERT_EQ(k.facets.size(), 1u);
	EXPECT_EQ(k.facets[0].size(), 3u);
	Poset anti = Poset::from_order(4, [](int x, int y) { return x == y; });
	EXPECT_EQ(order_complex(anti).facets.size(), 4u);
	auto pp = proper_part_complex(cl_example());
	EXPECT_EQ(pp.facets.size(), 4u);
	auto hs = integral_reduced_homology(pp);
	EXPECT_EQ(hs.betti(1), 1);
	EXPECT_EQ(hs.betti(0), 0);
	EXPECT_THROW(proper_part_complex(chain(1)), PosetError);
}

TEST(Poset, MobiusEqualsReducedEulerCharacteristic)
{
	std::mt19937 rng(5);
	for (int trial = 0; trial < 30; ++trial) {
		Poset p = random_bounded(rng, 5);
		EXPECT_EQ(mobius_invariant(p), reduced_euler_characteristic(proper_part_complex(p)));
	}
	for (const char* name : {"fig4i.graph", "fig4ii.graph", "fig3_h2.graph", "fig3_h3.graph"}) {
		auto g = fixtures::graph(name);
		for (Mask a : enumerate_admissible(g)) {
			auto ep = even_poset(g, a);
			EXPECT_EQ(mobius_invariant(ep->poset), reduced_euler_characteristic(proper_part_complex(ep->poset)));
		}
	}
}

TEST(Poset, DotExport)
{
	std::string dot = to_dot(cl_example());
	EXPECT_NE(dot.find("n0 -> n1"), std::string::npos);
	EXPECT_NE(dot.find("label=\"f\""), std::string::npos);
}
