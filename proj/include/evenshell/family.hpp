#ifndef EVENSHELL_FAMILY_HPP
#define EVENSHELL_FAMILY_HPP

#include <algorithm>
#include <bit>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "multigraph.hpp"

namespace evenshell {

struct FamilyTag {
	enum Kind { Simple, P, S, T, Pp, Sp, Tp, None };
	Kind kind = None;
	int n = 0, m = 0;

	bool operator==(const FamilyTag&) const = default;
	bool primed() const { return kind == Pp || kind == Sp || kind == Tp; }
};

inline std::string to_string(const FamilyTag& t)
{
	std::string base;
	switch (t.kind) {
	case FamilyTag::Simple: return "Simple";
	case FamilyTag::None: return "None";
	case FamilyTag::P: case FamilyTag::Pp: base = "P̃"; break;
	case FamilyTag::S: case FamilyTag::Sp: base = "S̃"; break;
	case FamilyTag::T: case FamilyTag::Tp: base = "T̃"; break;
	}
	if (t.primed())
		base += "′";
	return base + "_{" + std::to_string(t.n) + "," + std::to_string(t.m) + "}";
}

// Shape of a single-bundle member: bundle endpoints p (carrying the tail) and q,
// and the tail vertices ordered outward from the neighbor of p.
struct FamilyShape {
	FamilyTag tag;
	int p = -1, q = -1;
	std::vector<int> tail;
};

namespace detail {

inline bool connected(const Multigraph& g)
{
	return component_masks(g, g.ground()).size() <= 1;
}

// Breadth-first order from `root` over simple edges inside `allowed`, ties by id.
inline std::vector<int> bfs_order(const Multigraph& g, int root, Mask allowed)
{
	std::vector<int> order{root};
	Mask seen = bit(root);
	for (std::size_t i = 0; i < order.size(); ++i) {
		std::vector<int> next;
		Mask nb = g.simple_neighbors(order[i]) & allowed & ~seen;
		for (int v = 0; v < g.n(); ++v)
			if (has(nb, v))
				next.push_back(v);
		std::sort(next.begin(), next.end(), [&](int a, int b) { return g.id(a) < g.id(b); });
		for (int v : next) {
			seen |= bit(v);
			order.push_back(v);
		}
	}
	return order;
}

inline int degree_in(const Multigraph& g, int v, Mask allowed) { return popcount(g.simple_neighbors(v) & allowed); }

// Classifies the tail hanging from v3: 'P' path from v3, 'S' fork, 'T' fork with
// joined leaves, 0 otherwise.
inline char tail_shape(const Multigraph& g, int v3, Mask rest)
{
	int k = popcount(rest);
	int edges = 0;
	for (int v = 0; v < g.n(); ++v)
		if (has(rest, v))
			edges += degree_in(g, v, rest);
	edges /= 2;
	auto order = bfs_order(g, v3, rest);
	if (static_cast<int>(order.size()) != k)
		return 0;
	if (edges == k - 1) {
		// tree: path with v3 at an end, or a fork
		int deg1 = 0, deg3 = 0, other = 0;
		for (int v : order) {
			int d = degree_in(g, v, rest) + (v == v3 ? 1 : 0);  // count the edge to p
			if (d == 1)
				++deg1;
			else if (d == 3)
				++deg3;
			else if (d != 2)
				++other;
		}
		if (other)
			return 0;
		if (deg3 == 0)
			return degree_in(g, v3, rest) <= 1 ? 'P' : 0;
		if (deg3 != 1)
			return 0;
		// fork: the branching vertex must carry two leaves
		for (int v : order) {
			int d = degree_in(g, v, rest) + (v == v3 ? 1 : 0);
			if (d != 3)
				continue;
			int leaves = 0;
			for (int u = 0; u < g.n(); ++u)
				if (has(g.simple_neighbors(v) & rest, u) && degree_in(g, u, rest) == 1 && u != v3)
					++leaves;
			return leaves == 2 ? 'S' : 0;
		}
		return 0;
	}
	if (edges == k) {
		// one triangle at the far end: branching vertex w with leaves x, y and edge xy
		for (int w : order) {
			Mask nb = g.simple_neighbors(w) & rest;
			for (int x = 0; x < g.n(); ++x)
				for (int y = x + 1; y < g.n(); ++y) {
					if (!has(nb, x) || !has(nb, y) || x == v3 || y == v3)
						continue;
					if (!g.simple_adjacent(x, y))
						continue;
					if (degree_in(g, x, rest) != 2 || degree_in(g, y, rest) != 2)
						continue;
					Mask path = rest & ~bit(x) & ~bit(y);
					if (has(path, w) && tail_shape(g, v3, path) == 'P') {
						// w must be the far end of the remaining path
						auto po = bfs_order(g, v3, path);
						if (po.back() == w && (po.size() == 1 || degree_in(g, w, path) == 1))
							return 'T';
					}
				}
		}
	}
	return 0;
}

}  // namespace detail

inline FamilyShape family_shape(const Multigraph& g)
{
	if (!detail::connected(g))
		throw GraphError("family_of needs a connected graph");
	FamilyShape res;
	if (g.bundles().empty()) {
		res.tag = {FamilyTag::Simple, g.n(), 0};
		return res;
	}
	if (g.bundles().size() != 1)
		return res;
	const Bundle& b = g.bundles()[0];
	int m = static_cast<int>(b.labels.size());
	int n = g.n();
	if (n == 2) {
		res.tag = {FamilyTag::P, 2, m};
		res.p = g.id(b.u) < g.id(b.v) ? b.u : b.v;
		res.q = res.p == b.u ? b.v : b.u;
		return res;
	}
	int cand[2] = {b.u, b.v};
	if (g.id(cand[1]) < g.id(cand[0]))
		std::swap(cand[0], cand[1]);
	for (int p : cand) {
		int q = p == b.u ? b.v : b.u;
		Mask np = g.simple_neighbors(p), nq = g.simple_neighbors(q);
		if (popcount(np) != 1)
			continue;
		int v3 = std::countr_zero(np);
		bool primed;
		if (nq == 0)
			primed = false;
		else if (nq == np)
			primed = true;
		else
			continue;
		Mask rest = g.vertex_mask() & ~bit(p) & ~bit(q);
		char shape = detail::tail_shape(g, v3, rest);
		FamilyTag::Kind kind = FamilyTag::None;
		if (shape == 'P')
			kind = primed ? FamilyTag::Pp : FamilyTag::P;
		else if ((shape == 'S' || shape == 'T') && n >= 5 && n % 2 == 1)
			kind = shape == 'S' ? (primed ? FamilyTag::Sp : FamilyTag::S) : (primed ? FamilyTag::Tp : FamilyTag::T);
		if (kind == FamilyTag::None)
			continue;
		res.tag = {kind, n, m};
		res.p = p;
		res.q = q;
		res.tail = detail::bfs_order(g, v3, rest);
		return res;
	}
	return res;
}

inline FamilyTag family_of(const Multigraph& g) { return family_shape(g).tag; }

// Canonical member of a family: bundle x1..xm on vertices 1, 2, tail 3..n hung
// on vertex 1, the primed variants joining 2 to 3. Forked shapes branch at n-2
// with leaves n-1 and n, joined for the T shapes.
inline Multigraph family_graph(FamilyTag::Kind kind, int n, int m)
{
	bool primed = kind == FamilyTag::Pp || kind == FamilyTag::Sp || kind == FamilyTag::Tp;
	bool forked = kind == FamilyTag::S || kind == FamilyTag::Sp || kind == FamilyTag::T || kind == FamilyTag::Tp;
	bool joined = kind == FamilyTag::T || kind == FamilyTag::Tp;
	if (kind == FamilyTag::Simple || kind == FamilyTag::None || m < 2 || n < 2 || (primed && n < 3) ||
	    (forked && (n < 5 || n % 2 == 0)))
		throw GraphError("no family member with these parameters");
	std::vector<int> ids(n);
	for (int i = 0; i < n; ++i)
		ids[i] = i + 1;
	std::vector<Edge> edges;
	for (int k = 1; k <= m; ++k)
		edges.push_back({0, 1, "x" + std::to_string(k)});
	if (n >= 3)
		edges.push_back({0, 2, ""});
	if (primed)
		edges.push_back({1, 2, ""});
	int spine_end = forked ? n - 1 : n;  // last vertex id on the spine
	for (int v = 3; v < spine_end; ++v)
		edges.push_back({v - 1, v, ""});
	if (forked) {
		edges.push_back({n - 3, n - 1, ""});
		if (joined)
			edges.push_back({n - 2, n - 1, ""});
	}
	return Multigraph::build(ids, edges);
}

// All family members with |V| + |B| at most max_ground.
inline std::vector<std::pair<FamilyTag, Multigraph>> family_members(int max_ground)
{
	std::vector<std::pair<FamilyTag, Multigraph>> out;
	const FamilyTag::Kind kinds[] = {FamilyTag::P, FamilyTag::S, FamilyTag::T, FamilyTag::Pp, FamilyTag::Sp, FamilyTag::Tp};
	for (FamilyTag::Kind kind : kinds)
		for (int n = 2; n + 2 <= max_ground; ++n)
			for (int m = 2; n + m <= max_ground; ++m) {
				try {
					out.push_back({FamilyTag{kind, n, m}, family_graph(kind, n, m)});
				} catch (const GraphError&) {
				}
			}
	return out;
}


inline bool in_g_star(const Multigraph& g)
{
	for (const Multigraph& c : components(g))
		if (family_of(c).kind == FamilyTag::None)
			return false;
	return true;
}

}  // namespace evenshell

#endif
