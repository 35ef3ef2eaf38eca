#ifndef EVENSHELL_EVENPOSET_HPP
#define EVENSHELL_EVENPOSET_HPP

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "family.hpp"
#include "multigraph.hpp"
#include "poset.hpp"

namespace evenshell {

struct EvenPoset {
	Multigraph host;
	Mask admissible = 0;
	std::vector<Mask> elements;  // ∅ first, host last
	Poset poset;

	int index_of(Mask s) const
	{
		auto it = lookup.find(s);
		return it == lookup.end() ? -1 : it->second;
	}
	std::string name(int x) const { return set_to_string(host, elements[x]); }

	std::map<Mask, int> lookup;
};

// All semi-induced subsets, in (size, mask) order.
inline std::vector<Mask> semi_induced_sets(const Multigraph& g)
{
	std::vector<Mask> out;
	int n = g.n();
	if (n > 30)
		throw GraphError("too many vertices for subgraph enumeration");
	for (Mask verts = 0; verts < bit(n); ++verts) {
		std::vector<Mask> acc{verts};
		for (const Bundle& b : g.bundles()) {
			if (!has(verts, b.u) || !has(verts, b.v))
				continue;
			std::vector<Mask> next;
			for (Mask s : acc)
				for (Mask sub = b.mask; sub; sub = (sub - 1) & b.mask)
					next.push_back(s | sub);
			acc = std::move(next);
		}
		out.insert(out.end(), acc.begin(), acc.end());
	}
	std::sort(out.begin(), out.end(), [](Mask x, Mask y) {
		return popcount(x) != popcount(y) ? popcount(x) < popcount(y) : x < y;
	});
	return out;
}

// Parity of |component ∩ a| for each component: 0 all even, 1 all odd, -1 mixed.
inline int component_parity(const Multigraph& g, Mask s, Mask a)
{
	int all = -2;
	for (Mask c : component_masks(g, s)) {
		int p = popcount(c & a) % 2;
		if (all == -2)
			all = p;
		else if (all != p)
			return -1;
	}
	return all == -2 ? 0 : all;
}

inline bool is_a_even(const Multigraph& g, Mask s, Mask a)
{
	for (Mask c : component_masks(g, s))
		if (popcount(c & a) % 2)
			return false;
	return true;
}

inline bool is_a_odd(const Multigraph& g, Mask s, Mask a)
{
	if (!s)
		return false;
	for (Mask c : component_masks(g, s))
		if (popcount(c & a) % 2 == 0)
			return false;
	return true;
}

inline Poset containment_poset(const std::vector<Mask>& elems)
{
	int m = static_cast<int>(elems.size());
	std::vector<Bits> above(m, Bits(m));
	for (int i = 0; i < m; ++i)
		for (int j = 0; j < m; ++j)
			if ((elems[i] & ~elems[j]) == 0)
				above[i].set(j);
	return Poset::from_upsets(std::move(above), false);
}

// Null result when a is not admissible.
inline std::optional<EvenPoset> even_poset(const Multigraph& g, Mask a)
{
	require_subset(g, a);
	if (!is_admissible(g, a))
		return std::nullopt;
	EvenPoset ep;
	ep.host = g;
	ep.admissible = a;
	for (Mask s : semi_induced_sets(g))
		if (is_a_even(g, s, a))
			ep.elements.push_back(s);
	ep.poset = containment_poset(ep.elements);
	for (int i = 0; i < static_cast<int>(ep.elements.size()); ++i) {
		ep.lookup[ep.elements[i]] = i;
		ep.poset.names.push_back(set_to_string(g, ep.elements[i]));
	}
	return ep;
}

struct OddPoset {
	Multigraph host;
	Mask admissible = 0;
	std::vector<Mask> elements;
	Poset poset;
};

inline OddPoset odd_poset(const Multigraph& g, Mask a)
{
	require_subset(g, a);
	OddPoset op;
	op.host = g;
	op.admissible = a;
	for (Mask s : semi_induced_sets(g))
		if (is_a_odd(g, s, a))
			op.elements.push_back(s);
	op.poset = containment_poset(op.elements);
	for (Mask s : op.elements)
		op.poset.names.push_back(set_to_string(g, s));
	return op;
}

// ---------------------------------------------------------------------------
// Canonical labeling of single-bundle family members.

struct CanonicalLabeling {
	std::vector<int> vertex_to;       // source vertex index -> canonical id 1..n
	std::vector<std::string> label_to;  // source label index -> canonical label
	std::vector<int> ground_to;       // source ground bit -> canonical ground bit
	int two_m = 0, ell = 0;
};

struct CanonicalForm {
	Multigraph graph;
	Mask admissible = 0;
	CanonicalLabeling labeling;
	FamilyTag tag;

	Mask to_canonical(Mask s) const
	{
		Mask out = 0;
		for (int i = 0; i < static_cast<int>(labeling.ground_to.size()); ++i)
			if (has(s, i))
				out |= bit(labeling.ground_to[i]);
		return out;
	}
	Mask from_canonical(Mask s) const
	{
		Mask out = 0;
		for (int i = 0; i < static_cast<int>(labeling.ground_to.size()); ++i)
			if (has(s, labeling.ground_to[i]))
				out |= bit(i);
		return out;
	}
};

inline CanonicalForm canonical_labeling(const Multigraph& g, Mask a)
{
	FamilyShape shape = family_shape(g);
	if (shape.tag.kind == FamilyTag::None || shape.tag.kind == FamilyTag::Simple)
		throw GraphError("graph is not a single-bundle family member");
	if (!is_admissible(g, a))
		throw GraphError("set is not admissible");
	int n = g.n();
	int p = shape.p, q = shape.q;
	int one, two;
	if (n % 2) {
		one = has(a, p) ? q : p;
	} else if (shape.tag.primed()) {
		// both endpoints are adjacent to 3; the graph swaps them
		one = g.id(p) < g.id(q) ? p : q;
	} else {
		one = n == 2 ? (g.id(p) < g.id(q) ? p : q) : p;
	}
	two = one == p ? q : p;
	CanonicalForm cf;
	cf.tag = shape.tag;
	CanonicalLabeling& lab = cf.labeling;
	lab.vertex_to.assign(n, 0);
	lab.vertex_to[one] = 1;
	lab.vertex_to[two] = 2;
	for (std::size_t i = 0; i < shape.tail.size(); ++i)
		lab.vertex_to[shape.tail[i]] = static_cast<int>(i) + 3;
	const Bundle& b = g.bundles()[0];
	std::vector<int> a_labels, b_labels;
	for (int k : b.labels)
		(has(a, n + k) ? a_labels : b_labels).push_back(k);
	lab.two_m = static_cast<int>(a_labels.size());
	lab.ell = static_cast<int>(b_labels.size());
	lab.label_to.assign(g.num_labels(), "");
	lab.ground_to.assign(g.ground_size(), -1);
	std::vector<Edge> edges;
	for (int i = 0; i < lab.two_m; ++i) {
		lab.label_to[a_labels[i]] = "a" + std::to_string(i + 1);
		edges.push_back({0, 1, lab.label_to[a_labels[i]]});
		lab.ground_to[n + a_labels[i]] = n + i;
	}
	for (int i = 0; i < lab.ell; ++i) {
		lab.label_to[b_labels[i]] = "b" + std::to_string(i + 1);
		edges.push_back({0, 1, lab.label_to[b_labels[i]]});
		lab.ground_to[n + b_labels[i]] = n + lab.two_m + i;
	}
	for (int v = 0; v < n; ++v)
		lab.ground_to[v] = lab.vertex_to[v] - 1;
	std::vector<std::pair<int, int>> simple;
	for (auto [u, v] : g.simple_edges()) {
		int x = lab.vertex_to[u] - 1, y = lab.vertex_to[v] - 1;
		simple.push_back({std::min(x, y), std::max(x, y)});
	}
	std::sort(simple.begin(), simple.end());
	for (auto [u, v] : simple)
		edges.push_back({u, v, ""});
	std::vector<int> ids(n);
	for (int i = 0; i < n; ++i)
		ids[i] = i + 1;
	cf.graph = Multigraph::build(ids, edges);
	cf.admissible = cf.to_canonical(a);
	return cf;
}

// Parameters of a canonical single-bundle host: vertices are bits 0..n-1 with
// bundle on bits 0, 1; A-edges precede non-A edges.
struct CanonicalParams {
	int n = 0, two_m = 0, ell = 0;
	Mask a_edges = 0, b_edges = 0, verts = 0;
	bool odd() const { return n % 2 == 1; }
};

inline CanonicalParams canonical_params(const EvenPoset& ep)
{
	const Multigraph& g = ep.host;
	if (g.bundles().size() != 1)
		throw GraphError("host is not a single-bundle graph");
	const Bundle& b = g.bundles()[0];
	if (!((b.u == 0 && b.v == 1)))
		throw GraphError("bundle is not on vertices 1 and 2");
	CanonicalParams cp;
	cp.n = g.n();
	cp.verts = g.vertex_mask();
	for (int k = 0; k < g.num_labels(); ++k) {
		bool in_a = has(ep.admissible, cp.n + k);
		if (in_a) {
			if (cp.ell)
				throw GraphError("A-edges must precede the other bundle edges");
			++cp.two_m;
			cp.a_edges |= bit(cp.n + k);
		} else {
			++cp.ell;
			cp.b_edges |= bit(cp.n + k);
		}
	}
	if (cp.odd() && has(ep.admissible, 0))
		throw GraphError("vertex 1 must lie outside A when |V| is odd");
	if (!cp.odd() && cp.n > 2 && !g.simple_adjacent(0, 2))
		throw GraphError("vertices 1 and 3 must be adjacent when |V| is even");
	return cp;
}

inline std::optional<EvenPoset> canonical_even_poset(const CanonicalForm& cf)
{
	return even_poset(cf.graph, cf.admissible);
}

// ---------------------------------------------------------------------------
// Cover types.

enum class CoverType { E1, E2, E3, E4, E1p, E2p, E3p1, E3p2 };

inline std::string to_string(CoverType t)
{
	switch (t) {
	case CoverType::E1: return "E1";
	case CoverType::E2: return "E2";
	case CoverType::E3: return "E3";
	case CoverType::E4: return "E4";
	case CoverType::E1p: return "E1′";
	case CoverType::E2p: return "E2′";
	case CoverType::E3p1: return "E3′-1";
	case CoverType::E3p2: return "E3′-2";
	}
	return "?";
}

inline CoverType cover_type(const EvenPoset& ep, Mask i, Mask j)
{
	CanonicalParams cp = canonical_params(ep);
	int xi = ep.index_of(i), xj = ep.index_of(j);
	if (xi < 0 || xj < 0)
		throw GraphError("sets are not elements of the poset");
	const auto& ups = ep.poset.up(xi);
	if (!std::binary_search(ups.begin(), ups.end(), xj))
		throw GraphError("not a cover");
	Mask a = ep.admissible;
	Mask d = j & ~i;
	Mask ends = d & Mask{3};
	Mask db = d & cp.b_edges, da = d & cp.a_edges;
	Mask rest = cp.verts & ~i & ~Mask{3};
	Mask v = rest ? (rest & -rest) : 0;  // min(V ∖ (I ∪ {1,2}))
	// free vertices as far from 1 as v: the leaves of a fork are interchangeable
	Mask level = 0;
	if (v) {
		std::vector<int> dist(ep.host.n(), -1);
		std::vector<int> queue{0};
		dist[0] = 0;
		for (std::size_t q = 0; q < queue.size(); ++q) {
			int u = queue[q];
			Mask nb = ep.host.simple_neighbors(u);
			if (u < 2)
				nb |= Mask{3} & ~bit(u);
			for (int w = 0; w < ep.host.n(); ++w)
				if (has(nb, w) && dist[w] < 0) {
					dist[w] = dist[u] + 1;
					queue.push_back(w);
				}
		}
		int dv = dist[std::countr_zero(v)];
		for (int w = 0; w < ep.host.n(); ++w)
			if (has(rest, w) && dist[w] == dv)
				level |= bit(w);
	}
	int k = popcount(d);
	bool ends_in_a = (ends & ~a) == 0;
	if (k == 1 && db)
		return CoverType::E1p;
	if (k == 1 && ends && !ends_in_a)
		return CoverType::E1;
	if (k == 2 && (d & ~a) == 0)
		return CoverType::E2;
	if (k == 2 && popcount(db) == 1 && popcount(ends) == 1 && !ends_in_a)
		return CoverType::E2p;
	if (k == 3 && !db && popcount(ends) == 1 && !ends_in_a && da) {
		// w a c with c an A-edge or the least free tail vertex
		Mask c = d & ~ends;
		if ((c & ~cp.a_edges) == 0 || (popcount(da) == 1 && popcount(c & ~da) == 1 && (c & ~da & level)))
			return CoverType::E3;
	}
	if (k == 4 && popcount(ends) == 2 && popcount(da) == 2 && ends_in_a)
		return CoverType::E4;
	if (k == 3 && popcount(db) == 1 && popcount(ends) == 1 && ends_in_a && popcount(d & cp.verts & ~Mask{3}) == 1 && (d & level))
		return CoverType::E3p1;
	if (k == 3 && popcount(db) == 1 && popcount(ends) == 2 && ends_in_a)
		return CoverType::E3p2;
	throw GraphError("cover " + set_to_string(ep.host, i) + " ⋖ " + set_to_string(ep.host, j) + " matches no type");
}

// ---------------------------------------------------------------------------
// Chain-length spectra.

inline std::set<int> chain_length_spectrum(const EvenPoset& ep) { return chain_lengths(ep.poset); }

inline std::set<int> predicted_spectrum(const EvenPoset& ep)
{
	CanonicalParams cp = canonical_params(ep);
	int half = popcount(ep.admissible) / 2;
	int l = cp.ell;
	if (cp.odd()) {
		bool adj23 = cp.n > 2 && ep.host.simple_adjacent(1, 2);
		if (!adj23 && l == 0)
			return {half + 1};
		return {half + l + 1, half + l};
	}
	if ((ep.admissible & cp.verts) != cp.verts)
		return {half + l + 1};
	// with two vertices the first multiple-edge cover always adds 12 and a pair
	if (cp.n == 2)
		return {half + l - 1};
	return {half + l, half + l - 1};
}

}  // namespace evenshell

#endif
