#ifndef EVENSHELL_TORIC_HPP
#define EVENSHELL_TORIC_HPP

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <stdexcept>
#include <thread>
#include <vector>

#include "evenposet.hpp"
#include "family.hpp"
#include "homology.hpp"
#include "multigraph.hpp"
#include "poset.hpp"

namespace evenshell {

using BettiVector = std::vector<Int>;

struct ToricError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

inline Int binomial(int n, int k)
{
	if (k < 0 || n < 0 || k > n)
		return 0;
	Int r = 1;
	for (int i = 1; i <= k; ++i)
		r = r * (n - k + i) / i;
	return r;
}

inline Int catalan(int k) { return k < 0 ? Int(0) : binomial(2 * k, k) / (k + 1); }

// Drops trailing zeros, keeping at least one entry.
inline BettiVector trimmed(BettiVector b)
{
	while (b.size() > 1 && b.back() == 0)
		b.pop_back();
	return b;
}

// β^i of the real toric manifold of a simple path on n vertices, i = 0..n-1.
inline BettiVector betti_simple_path(int n)
{
	if (n <= 1)
		return {1};
	BettiVector b(n, 0);
	for (int i = 0; i <= n / 2 && i < n; ++i)
		b[i] = binomial(n, i) - binomial(n, i - 1);
	return b;
}

inline Int betti_simple_path_at(int n, int i)
{
	if (n <= 1)
		return i == 0 ? 1 : 0;
	return (i >= 0 && i <= n / 2) ? binomial(n, i) - binomial(n, i - 1) : Int(0);
}

// Summed odd-side reduced Betti numbers b^i_k over admissible sets of the
// path with a double edge on k vertices; keyed by i.
inline std::map<int, Int> odd_betti_tilde_path2(int k)
{
	std::map<int, Int> out;
	if (k < 2)
		return out;
	if (k % 2 == 0) {
		out[k / 2 - 1] = catalan(k / 2);
		out[k / 2] = catalan(k / 2);
	} else {
		out[(k - 1) / 2] = catalan((k + 1) / 2) - catalan((k - 1) / 2);
	}
	return out;
}

inline Int odd_betti_tilde_path2_at(int k, int i)
{
	auto m = odd_betti_tilde_path2(k);
	auto it = m.find(i);
	return it == m.end() ? Int(0) : it->second;
}

// Closed-form falling-chain count for the path with a double edge on n
// vertices and admissible set a.
inline Int falling_count_tilde_path2(const Multigraph& g, Mask a)
{
	FamilyTag t = family_of(g);
	if (t.kind != FamilyTag::P || t.m != 2)
		throw ToricError("host is not a path with a double edge");
	if (!is_admissible(g, a))
		throw ToricError("set is not admissible");
	int n = g.n();
	if (n % 2 == 0)
		return catalan(n / 2);
	int k = (n - 1) / 2;
	Mask av = a & g.vertex_mask();
	Multigraph induced = pi_subgraph(g, av, 0);
	if (component_masks(induced, induced.ground()).size() == 1)
		return catalan(k + 1) - catalan(k);
	return 0;
}

// β^0..β^n of the real toric manifold of the path with a double edge on n
// vertices, from the closed-form summation over pieces split off the path.
inline BettiVector betti_tilde_path2(int n)
{
	if (n < 2)
		throw ToricError("needs at least two vertices");
	BettiVector b(n + 1, 0);
	b[0] = 1;
	for (int i = 1; i <= n; ++i) {
		Int s = betti_simple_path_at(n, i);
		for (int l = 0; l <= i - 1; ++l)
			for (int m = 2; m <= n - 2; ++m)
				s += odd_betti_tilde_path2_at(m, l) * betti_simple_path_at(n - m - 1, i - l - 1);
		s += odd_betti_tilde_path2_at(n - 1, i - 1) + odd_betti_tilde_path2_at(n, i - 1);
		b[i] = s;
	}
	return b;
}

// dim of the pseudograph associahedron of h: per component |V|-1+Σ(|B|-1).
inline int associahedron_dimension(const Multigraph& h)
{
	int d = 0;
	for (const Multigraph& c : components(h)) {
		d += c.n() - 1;
		for (const Bundle& b : c.bundles())
			d += static_cast<int>(b.labels.size()) - 1;
	}
	return d;
}

using DegreeMap = std::map<int, Int>;

// Reduced odd-side cohomology ranks of a connected h with admissible a, obtained
// from the even side by duality: degree i pairs with dimension dim - i - 2.
inline DegreeMap odd_betti_by_duality(const Multigraph& h, Mask a, std::size_t budget = 2000000)
{
	auto ep = even_poset(h, a);
	if (!ep)
		throw ToricError("set is not admissible");
	int dim = associahedron_dimension(h);
	HomologySummary hs = integral_reduced_homology(proper_part_complex(ep->poset), budget);
	DegreeMap out;
	for (int d = -1; d + 1 < static_cast<int>(hs.groups.size()); ++d)
		if (hs.betti(d))
			out[dim - d - 2] += hs.betti(d);
	return out;
}

// Reduced cohomology ranks of the order complex of the odd poset itself; used
// only as a cross-check against the duality route.
inline DegreeMap odd_betti_raw(const Multigraph& h, Mask a, std::size_t budget = 2000000)
{
	OddPoset op = odd_poset(h, a);
	HomologySummary hs = integral_reduced_homology(order_complex(op.poset), budget);
	DegreeMap out;
	for (int d = -1; d + 1 < static_cast<int>(hs.groups.size()); ++d)
		if (hs.betti(d))
			out[d] += hs.betti(d);
	return out;
}

// Joining complexes adds degrees plus one.
inline DegreeMap join_convolution(const DegreeMap& x, const DegreeMap& y)
{
	DegreeMap out;
	for (const auto& [i, u] : x)
		for (const auto& [j, v] : y)
			out[i + j + 1] += u * v;
	return out;
}

// Contribution of one admissible pair: odd-side degrees of each component of
// the PI-graph, joined.
inline DegreeMap pair_contribution(const AdmissiblePair& ap, std::size_t budget = 2000000)
{
	const Multigraph& h = ap.pi.graph;
	DegreeMap total{{-1, 1}};  // empty complex {∅}
	for (Mask comp : component_masks(h, h.ground())) {
		Multigraph c = subgraph(h, comp);
		Mask ca = 0;
		for (int e = 0; e < h.ground_size(); ++e)
			if (has(ap.admissible & comp, e)) {
				int cb = e < h.n() ? c.vertex_of_id(h.id(e)) : c.bit_of_label(h.label(e - h.n()));
				ca |= bit(cb);
			}
		total = join_convolution(total, odd_betti_by_duality(c, ca, budget));
	}
	return total;
}

// β^i of the real toric manifold of g as a sum over admissible pairs of the
// odd-side contributions; jobs > 1 splits the pairs across threads.
inline BettiVector betti_general(const Multigraph& g, std::size_t budget = 2000000, int jobs = 1)
{
	if (!in_g_star(g))
		throw ToricError("graph is outside the shellable class; integral cohomology may have odd torsion");
	auto pairs = a_star(g);
	int dim = associahedron_dimension(g);
	int workers = std::max(1, std::min<int>(jobs, static_cast<int>(pairs.size())));
	std::vector<BettiVector> partial(workers, BettiVector(dim + 1, 0));
	std::vector<std::exception_ptr> errors(workers);
	auto work = [&](int w) {
		try {
			for (std::size_t t = w; t < pairs.size(); t += workers)
				for (const auto& [deg, v] : pair_contribution(pairs[t], budget)) {
					if (deg + 1 < 0 || deg + 1 > dim) {
						if (v != 0)
							throw ToricError("contribution outside the manifold dimension");
						continue;
					}
					partial[w][deg + 1] += v;
				}
		} catch (...) {
			errors[w] = std::current_exception();
		}
	};
	if (workers == 1) {
		work(0);
	} else {
		std::vector<std::thread> pool;
		for (int w = 0; w < workers; ++w)
			pool.emplace_back(work, w);
		for (auto& t : pool)
			t.join();
	}
	for (auto& e : errors)
		if (e)
			std::rethrow_exception(e);
	BettiVector b(dim + 1, 0);
	for (const auto& part : partial)
		for (int i = 0; i <= dim; ++i)
			b[i] += part[i];
	return b;
}

// ---------------------------------------------------------------------------
// Tubing complex and h-vector.

struct TubingComplex {
	std::vector<Mask> tubes;  // proper connected semi-induced subgraphs
	SimplicialComplex complex;
};

inline bool tubes_compatible(const Multigraph& g, Mask x, Mask y)
{
	if ((x & y) == x || (x & y) == y)
		return true;
	Mask xv = x & g.vertex_mask(), yv = y & g.vertex_mask();
	if (xv & yv)
		return false;
	for (int v = 0; v < g.n(); ++v)
		if (has(xv, v) && (g.neighbors(v) & yv))
			return false;
	return true;
}

inline TubingComplex tubing_complex(const Multigraph& g)
{
	if (component_masks(g, g.ground()).size() != 1)
		throw ToricError("tubing complex needs a connected graph");
	TubingComplex tc;
	for (Mask s : semi_induced_sets(g))
		if (s && s != g.ground() && component_masks(g, s).size() == 1)
			tc.tubes.push_back(s);
	int t = static_cast<int>(tc.tubes.size());
	std::vector<Bits> adj(t, Bits(t));
	for (int i = 0; i < t; ++i)
		for (int j = 0; j < t; ++j)
			if (i != j && tubes_compatible(g, tc.tubes[i], tc.tubes[j]))
				adj[i].set(j);
	// maximal cliques by Bron–Kerbosch with pivoting
	tc.complex.num_vertices = t;
	std::vector<int> r;
	std::function<void(Bits, Bits)> bk = [&](Bits p, Bits x) {
		if (p.none() && x.none()) {
			tc.complex.facets.push_back(r);
			return;
		}
		Bits px = p | x;
		int pivot = static_cast<int>(px.find_first());
		Bits cand = p & ~adj[pivot];
		for (auto v = cand.find_first(); v != Bits::npos; v = cand.find_next(v)) {
			r.push_back(static_cast<int>(v));
			bk(p & adj[v], x & adj[v]);
			r.pop_back();
			p.reset(v);
			x.set(v);
		}
	};
	Bits all(t);
	all.set();
	if (t == 0)
		tc.complex.facets.push_back({});
	else
		bk(all, Bits(t));
	for (auto& f : tc.complex.facets)
		std::sort(f.begin(), f.end());
	std::sort(tc.complex.facets.begin(), tc.complex.facets.end());
	return tc;
}

// h_k = Σ_i (-1)^{k-i} C(d-i, k-i) f_{i-1} with d = dim + 1.
inline std::vector<Int> h_vector(const SimplicialComplex& k)
{
	if (!k.is_pure())
		throw ToricError("h-vector needs a pure complex");
	auto f = f_vector(k);  // f[0] counts the empty face
	int d = k.dimension() + 1;
	std::vector<Int> h(d + 1, 0);
	for (int j = 0; j <= d; ++j)
		for (int i = 0; i <= j; ++i) {
			Int term = binomial(d - i, j - i) * Int(i < static_cast<int>(f.size()) ? f[i] : 0);
			h[j] += (j - i) % 2 ? Int(-term) : term;
		}
	return h;
}

struct CohomologyDegree {
	int degree = 0;
	Int free_rank;
	Int two_torsion;           // h_i - β^i
	Int homology_two_torsion;  // Z/2 summands of H_i, from h_i = β^i + t_i + t_{i-1}
};

// Free rank from the Betti computation, two-torsion counts from the h-vector,
// which lists the mod-2 Betti numbers.
inline std::vector<CohomologyDegree> integral_cohomology(const Multigraph& g)
{
	if (component_masks(g, g.ground()).size() != 1)
		throw ToricError("integral cohomology needs a connected graph");
	BettiVector b = betti_general(g);
	std::vector<Int> h = h_vector(tubing_complex(g).complex);
	std::vector<CohomologyDegree> out;
	Int prev = 0;
	for (std::size_t i = 0; i < std::max(b.size(), h.size()); ++i) {
		Int bi = i < b.size() ? b[i] : Int(0);
		Int hi = i < h.size() ? h[i] : Int(0);
		if (hi < bi)
			throw ToricError("h-vector entry below the Betti number");
		Int t = hi - bi - prev;
		if (t < 0)
			throw ToricError("mod-2 Betti numbers inconsistent with the free ranks");
		out.push_back({static_cast<int>(i), bi, hi - bi, t});
		prev = t;
	}
	return out;
}

}  // namespace evenshell

#endif
