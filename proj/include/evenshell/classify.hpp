#ifndef EVENSHELL_CLASSIFY_HPP
#define EVENSHELL_CLASSIFY_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "evenposet.hpp"
#include "family.hpp"
#include "multigraph.hpp"
#include "poset.hpp"
#include "shellability.hpp"

namespace evenshell {

// Number of maximal chains of the closed interval [x, y].
inline double interval_chain_count(const Poset& p, int x, int y)
{
	Bits inside = p.upset(x) & p.downset(y);
	std::vector<double> cnt(p.size(), 0);
	const auto& lin = p.linear_extension();
	for (auto it = lin.rbegin(); it != lin.rend(); ++it) {
		int z = *it;
		if (!inside.test(z))
			continue;
		if (z == y) {
			cnt[z] = 1;
			continue;
		}
		for (int w : p.up(z))
			if (inside.test(w))
				cnt[z] += cnt[w];
	}
	return cnt[x];
}

struct Witness {
	AdmissiblePair pair;
	EvenPoset poset;
	int x = -1, y = -1;  // the non-shellable closed interval [x, y]
};

struct WitnessSearch {
	enum Status { Found, None, BudgetExceeded };
	Status status = None;
	Witness witness;
	int pairs_checked = 0;
	int skipped_intervals = 0;  // intervals with more facets than the brute-force bound
};

// Searches connected PI-graphs by increasing size for an interval whose proper
// part has no shelling. Disconnected PI-graphs are skipped: their intervals are
// products of intervals of their components, which are PI-graphs themselves.
inline WitnessSearch non_shellable_witness(const Multigraph& g, int max_facets = 14, std::int64_t budget = 10000000)
{
	WitnessSearch res;
	auto pairs = a_star(g);
	std::stable_sort(pairs.begin(), pairs.end(), [](const AdmissiblePair& a, const AdmissiblePair& b) {
		return std::make_pair(a.pi.graph.n(), a.pi.graph.ground_size()) <
		       std::make_pair(b.pi.graph.n(), b.pi.graph.ground_size());
	});
	std::int64_t spent = 0;
	for (const AdmissiblePair& ap : pairs) {
		const Multigraph& h = ap.pi.graph;
		if (h.n() < 3 || components(h).size() != 1)
			continue;
		auto ep = even_poset(h, ap.admissible);
		if (!ep)
			continue;
		++res.pairs_checked;
		const Poset& p = ep->poset;
		std::vector<std::array<int, 3>> cands;
		for (int x = 0; x < p.size(); ++x)
			for (auto yb = p.upset(x).find_first(); yb != Bits::npos; yb = p.upset(x).find_next(yb)) {
				int y = static_cast<int>(yb);
				int sz = static_cast<int>((p.upset(x) & p.downset(y)).count());
				if (sz >= 5)
					cands.push_back({sz, x, y});
			}
		std::sort(cands.begin(), cands.end());
		for (auto [sz, x, y] : cands) {
			if (interval_chain_count(p, x, y) > max_facets) {
				++res.skipped_intervals;
				continue;
			}
			Poset q = interval(p, x, y);
			if (length(q) < 3)
				continue;
			if (++spent > budget) {
				res.status = WitnessSearch::BudgetExceeded;
				return res;
			}
			if (is_shellable_bruteforce(proper_part_complex(q), max_facets).status == ShellResult::NotShellable) {
				res.status = WitnessSearch::Found;
				res.witness = {ap, *ep, x, y};
				return res;
			}
		}
	}
	return res;
}

// ---------------------------------------------------------------------------
// Isomorphism-invariant keys for small graphs with a marked ground subset.

// Lexicographically least encoding over all vertex permutations. Each vertex
// contributes its mark; each vertex pair contributes (simple?, marked bundle
// edges, unmarked bundle edges). Labels inside one bundle are interchangeable.
inline std::vector<int> canonical_key(const Multigraph& g, Mask marked = 0)
{
	int n = g.n();
	if (n > 8)
		throw GraphError("canonical key limited to 8 vertices");
	std::vector<std::vector<std::array<int, 3>>> pair(n, std::vector<std::array<int, 3>>(n, {0, 0, 0}));
	for (auto [u, v] : g.simple_edges())
		pair[u][v][0] = pair[v][u][0] = 1;
	for (const Bundle& b : g.bundles()) {
		int in = popcount(b.mask & marked), out = popcount(b.mask) - in;
		pair[b.u][b.v] = pair[b.v][b.u] = {0, in, out};
	}
	std::vector<int> perm(n);
	std::iota(perm.begin(), perm.end(), 0);
	std::vector<int> best;
	do {
		std::vector<int> key;
		key.push_back(n);
		for (int i = 0; i < n; ++i)
			key.push_back(has(marked, perm[i]) ? 1 : 0);
		for (int i = 0; i < n; ++i)
			for (int j = i + 1; j < n; ++j)
				for (int t : pair[perm[i]][perm[j]])
					key.push_back(t);
		if (best.empty() || key < best)
			best = std::move(key);
	} while (std::next_permutation(perm.begin(), perm.end()));
	return best;
}

// Multigraph on vertices 1..n from per-pair edge multiplicities (pairs in
// lexicographic order); bundles get labels e1, e2, ...
inline Multigraph graph_from_multiplicities(int n, const std::vector<int>& mult)
{
	std::vector<int> ids(n);
	std::iota(ids.begin(), ids.end(), 1);
	std::vector<Edge> edges;
	int next = 1, t = 0;
	for (int u = 0; u < n; ++u)
		for (int v = u + 1; v < n; ++v, ++t) {
			if (mult[t] == 1)
				edges.push_back({u, v, ""});
			else
				for (int k = 0; k < mult[t]; ++k)
					edges.push_back({u, v, "e" + std::to_string(next++)});
		}
	return Multigraph::build(ids, edges);
}

// Connected loopless multigraphs with 1..max_n vertices and at most max_edges
// edges counted with multiplicity, one per isomorphism class.
inline std::vector<Multigraph> connected_multigraphs(int max_n, int max_edges)
{
	std::vector<Multigraph> out;
	for (int n = 1; n <= max_n; ++n) {
		std::map<std::vector<int>, bool> seen;
		int pairs = n * (n - 1) / 2;
		std::vector<int> mult(pairs, 0);
		auto emit = [&] {
			Multigraph g = graph_from_multiplicities(n, mult);
			if (component_masks(g, g.ground()).size() != 1)
				return;
			auto key = canonical_key(g);
			if (seen.emplace(key, true).second)
				out.push_back(std::move(g));
		};
		std::function<void(int, int)> rec = [&](int t, int left) {
			if (t == pairs) {
				emit();
				return;
			}
			for (int m = 0; m <= left; ++m) {
				mult[t] = m;
				rec(t + 1, left - m);
			}
			mult[t] = 0;
		};
		rec(0, max_edges);
	}
	return out;
}

}  // namespace evenshell

#endif
