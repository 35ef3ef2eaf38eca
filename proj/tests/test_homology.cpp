#include <gtest/gtest.h>

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "common.hpp"
#include "evenshell/evenposet.hpp"
#include "evenshell/homology.hpp"
#include "evenshell/poset.hpp"

using namespace evenshell;

namespace {

SimplicialComplex read_facets(const std::string& name)
{
	std::istringstream in(fixtures::read_text(name));
	std::string line;
	SimplicialComplex k;
	while (std::getline(in, line)) {
		if (line.empty() || line[0] == '#')
			continue;
		std::istringstream ls(line);
		std::vector<int> f;
		int v;
		while (ls >> v) {
			f.push_back(v);
			k.num_vertices = std::max(k.num_vertices, v + 1);
		}
		k.facets.push_back(f);
	}
	return k;
}

// Rank of a dense integer matrix over GF(p).
std::int64_t rank_mod(std::vector<std::vector<std::int64_t>> a, std::int64_t p)
{
	auto pw = [p](std::int64_t b, std::int64_t e) {
		std::int64_t r = 1;
		b %= p;
		while (e) {
			if (e & 1)
				r = r * b % p;
			b = b * b % p;
			e >>= 1;
		}
		return r;
	};
	std::int64_t rank = 0;
	int rows = static_cast<int>(a.size());
	int cols = rows ? static_cast<int>(a[0].size()) : 0;
	for (auto& r : a)
		for (auto& x : r)
			x = ((x % p) + p) % p;
	for (int c = 0; c < cols && rank < rows; ++c) {
		int piv = -1;
		for (int r = static_cast<int>(rank); r < rows; ++r)
			if (a[r][c]) {
				piv = r;
				break;
			}
		if (piv < 0)
			continue;
		std::swap(a[piv], a[rank]);
		std::int64_t inv = pw(a[rank][c], p - 2);
		for (int r = 0; r < rows; ++r) {
			if (r == rank || !a[r][c])
				continue;
			std::int64_t f = a[r][c] * inv % p;
			for (int j = c; j < cols; ++j)
				a[r][j] = ((a[r][j] - f * a[rank][j]) % p + p) % p;
		}
		++rank;
	}
	return rank;
}

// Reduced Betti numbers over GF(p) from boundary ranks.
std::vector<std::int64_t> betti_mod(const SimplicialComplex& k, std::int64_t p)
{
	auto faces = all_faces(k);
	int top = static_cast<int>(faces.size()) - 2;
	std::vector<std::int64_t> rk(top + 3, 0);
	for (int d = 0; d <= top; ++d) {
		SparseMatrix m = boundary_matrix(faces, d);
		auto dense = m.dense();
		std::vector<std::vector<std::int64_t>> a(dense.size(), std::vector<std::int64_t>(m.cols));
		for (std::size_t i = 0; i < dense.size(); ++i)
			for (int j = 0; j < m.cols; ++j)
				a[i][j] = static_cast<std::int64_t>(dense[i][j]);
		rk[d + 1] = rank_mod(a, p);
	}
	std::vector<std::int64_t> b;
	for (int d = -1; d <= top; ++d) {
		std::int64_t cyc = static_cast<std::int64_t>(faces[d + 1].size()) - (d >= 0 ? rk[d + 1] : 0);
		std::int64_t bnd = d + 2 < static_cast<int>(rk.size()) ? rk[d + 2] : 0;
		b.push_back(cyc - bnd);
	}
	return b;
}

SimplicialComplex random_complex(std::mt19937& rng, int verts, int facets, int maxdim)
{
	SimplicialComplex k;
	k.num_vertices = verts;
	std::uniform_int_distribution<int> dim(1, maxdim + 1);
	for (int f = 0; f < facets; ++f) {
		std::vector<int> all(verts);
		for (int i = 0; i < verts; ++i)
			all[i] = i;
		std::shuffle(all.begin(), all.end(), rng);
		all.resize(dim(rng));
		std::sort(all.begin(), all.end());
		k.facets.push_back(all);
	}
	return normalized(k);
}

}  // namespace

TEST(Homology, BoundaryOfEdge)
{
	SimplicialComplex k{2, {{0, 1}}};
	auto m = boundary_matrix(k, 1).dense();
	ASSERT_EQ(m.size(), 2u);
	EXPECT_EQ(m[0][0], -1);
	EXPECT_EQ(m[1][0], 1);
}

TEST(Homology, BoundaryRanks)
{
	SimplicialComplex tri{3, {{0, 1}, {1, 2}, {0, 2}}};
	EXPECT_EQ(smith_invariants(boundary_matrix(tri, 1)).rank, 2);
	SimplicialComplex sq{4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}};
	EXPECT_EQ(smith_invariants(boundary_matrix(sq, 1)).rank, 3);
	EXPECT_EQ(integral_reduced_homology(sq).betti(1), 1);
}

TEST(Homology, Point)
{
	SimplicialComplex pt{1, {{0}}};
	auto hs = integral_reduced_homology(pt);
	for (int d = -1; d <= 0; ++d)
		EXPECT_EQ(hs.betti(d), 0);
	EXPECT_TRUE(wedge_summary(hs)->empty());
}

TEST(Homology, ProjectivePlaneHasTwoTorsion)
{
	auto k = read_facets("rp2.facets");
	auto hs = integral_reduced_homology(k);
	EXPECT_EQ(hs.betti(0), 0);
	EXPECT_EQ(hs.betti(1), 0);
	EXPECT_EQ(hs.betti(2), 0);
	ASSERT_EQ(hs.at(1).torsion.size(), 1u);
	EXPECT_EQ(hs.at(1).torsion[0], 2);
	EXPECT_FALSE(wedge_summary(hs).has_value());
	// oracle: the mod-2 and mod-large-prime Betti numbers differ exactly by the Z/2
	auto b2 = betti_mod(k, 2), bp = betti_mod(k, 1000003);
	EXPECT_EQ(b2[2], 1);  // dimension 1
	EXPECT_EQ(b2[3], 1);  // dimension 2
	EXPECT_EQ(bp[2], 0);
	EXPECT_EQ(bp[3], 0);
}

TEST(Homology, RandomComplexesMatchPrimeFieldRanks)
{
	std::mt19937 rng(2024);
	for (int trial = 0; trial < 40; ++trial) {
		auto k = random_complex(rng, 7, 6, 3);
		auto hs = integral_reduced_homology(k);
		auto bp = betti_mod(k, 1000003);
		for (int d = -1; d + 1 < static_cast<int>(bp.size()); ++d)
			ASSERT_EQ(hs.betti(d), bp[d + 1]) << "trial " << trial << " dim " << d;
		// universal coefficients: mod-2 Betti = free rank + 2-torsion in d and d-1
		auto b2 = betti_mod(k, 2);
		for (int d = 0; d + 1 < static_cast<int>(b2.size()); ++d) {
			std::int64_t t = 0;
			for (const auto& q : hs.at(d).torsion)
				t += q % 2 == 0;
			for (const auto& q : hs.at(d - 1).torsion)
				t += q % 2 == 0;
			ASSERT_EQ(b2[d + 1], hs.betti(d) + t);
		}
	}
}

TEST(Homology, EulerCharacteristic)
{
	std::mt19937 rng(99);
	for (int trial = 0; trial < 30; ++trial) {
		auto k = random_complex(rng, 6, 5, 3);
		auto hs = integral_reduced_homology(k);
		std::int64_t alt = 0;
		for (int d = -1; d + 1 < static_cast<int>(hs.groups.size()); ++d)
			alt += (d % 2 == 0 ? 1 : -1) * hs.betti(d);
		EXPECT_EQ(reduced_euler_characteristic(k), alt);
	}
}

TEST(Homology, WedgeSummariesOfThreeTailedPosets)
{
	auto g1 = fixtures::graph("fig4i.graph");
	auto ep1 = even_poset(g1, parse_set(g1, "2 3 4 5 a1 a2"));
	EXPECT_EQ(*wedge_summary(integral_reduced_homology(proper_part_complex(ep1->poset))), (std::vector<int>{2, 2, 2, 2}));
	auto g2 = fixtures::graph("fig4ii.graph");
	auto ep2 = even_poset(g2, parse_set(g2, "3 4 a1 a2"));
	auto hs2 = integral_reduced_homology(proper_part_complex(ep2->poset));
	EXPECT_EQ(hs2.betti(3), 3);
	EXPECT_EQ(*wedge_summary(hs2), (std::vector<int>{3, 3, 3}));
	SimplicialComplex cone{3, {{0, 1}, {0, 2}}};
	EXPECT_TRUE(wedge_summary(integral_reduced_homology(cone))->empty());
}

TEST(Homology, VoidAndEmptyComplexes)
{
	SimplicialComplex empty{0, {{}}};
	EXPECT_EQ(integral_reduced_homology(empty).betti(-1), 1);
	SimplicialComplex none{0, {}};
	EXPECT_EQ(integral_reduced_homology(none).betti(-1), 0);
}
