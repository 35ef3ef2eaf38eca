#ifndef EVENSHELL_SHELLABILITY_HPP
#define EVENSHELL_SHELLABILITY_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "evenposet.hpp"
#include "homology.hpp"
#include "poset.hpp"

namespace evenshell {

struct BudgetExceeded : std::runtime_error {
	using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Lexicographic orders and the explicit atom ordering of canonical hosts.

// Ground bits of the host in increasing order.
inline std::vector<int> lex_order(const EvenPoset& ep, Mask i)
{
	CanonicalParams cp = canonical_params(ep);
	if (ep.index_of(i) < 0)
		throw GraphError("set is not an element of the poset");
	int n = cp.n;
	std::vector<int> as, bs, tail;
	for (int k = 0; k < cp.two_m; ++k)
		as.push_back(n + k);
	for (int k = 0; k < cp.ell; ++k)
		bs.push_back(n + cp.two_m + k);
	for (int v = 2; v < n; ++v)
		tail.push_back(v);
	std::vector<int> out{0, 1};
	auto append = [&](const std::vector<int>& xs, std::size_t from, std::size_t to) {
		for (std::size_t t = from; t < to && t < xs.size(); ++t)
			out.push_back(xs[t]);
	};
	if ((i & (cp.a_edges | cp.b_edges)) == 0) {
		append(tail, 0, tail.size());
		append(as, 0, as.size());
		append(bs, 0, bs.size());
	} else if ((i & cp.b_edges) == 0) {
		std::size_t k = 0;
		for (std::size_t t = 0; t < as.size(); ++t)
			if (has(i, as[t]))
				k = t + 1;
		append(as, 0, k);
		append(tail, 0, tail.size());
		append(as, k, as.size());
		append(bs, 0, bs.size());
	} else {
		std::size_t k = 0;
		for (std::size_t t = 0; t < bs.size(); ++t)
			if (has(i, bs[t]))
				k = t + 1;
		append(as, 0, as.size());
		append(bs, 0, k);
		append(tail, 0, tail.size());
		append(bs, k, bs.size());
	}
	if (n == 1)
		out.resize(1);
	return out;
}

// Position in the order of I of the last tail vertex 3..n; with no tail, of the
// element just before the place the tail would take.
inline int tail_end_position(const EvenPoset& ep, Mask i)
{
	CanonicalParams cp = canonical_params(ep);
	int n = cp.n;
	if ((i & (cp.a_edges | cp.b_edges)) == 0)
		return n - 1;
	std::size_t k = 0;
	if ((i & cp.b_edges) == 0) {
		for (int t = 0; t < cp.two_m; ++t)
			if (has(i, n + t))
				k = t + 1;
		return static_cast<int>(1 + k + (n - 2));
	}
	for (int t = 0; t < cp.ell; ++t)
		if (has(i, n + cp.two_m + t))
			k = t + 1;
	return static_cast<int>(1 + cp.two_m + k + (n - 2));
}

inline std::vector<int> lex_positions(const EvenPoset& ep, Mask i)
{
	auto order = lex_order(ep, i);
	std::vector<int> pos(ep.host.ground_size(), -1);
	for (std::size_t t = 0; t < order.size(); ++t)
		pos[order[t]] = static_cast<int>(t);
	return pos;
}

inline std::vector<int> sorted_by(const std::vector<int>& pos, Mask s)
{
	std::vector<int> out;
	for (int b = 0; b < static_cast<int>(pos.size()); ++b)
		if (has(s, b))
			out.push_back(b);
	std::sort(out.begin(), out.end(), [&](int x, int y) { return pos[x] < pos[y]; });
	return out;
}

// Atoms of [i, G] as element indices, ordered by the (O1)/(O2) rules.
inline std::vector<int> atom_order(const EvenPoset& ep, Mask i)
{
	CanonicalParams cp = canonical_params(ep);
	int x = ep.index_of(i);
	if (x < 0)
		throw GraphError("set is not an element of the poset");
	if (x == ep.poset.top())
		throw GraphError("top element has no atoms");
	auto pos = lex_positions(ep, i);
	bool o1 = !cp.odd() && has(ep.admissible, 0) && has(ep.admissible, 1);
	struct Key {
		int group;
		std::vector<int> seq;
		int elem;
	};
	std::vector<Key> keys;
	for (int y : ep.poset.up(x)) {
		Mask d = ep.elements[y] & ~i;
		int ends = popcount(d & 3);
		int group = ends == 0 ? 2 : (o1 && ends == 2 ? 1 : 0);
		std::vector<int> seq;
		for (int b : sorted_by(pos, d))
			seq.push_back(pos[b]);
		keys.push_back({group, seq, y});
	}
	std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
		if (a.group != b.group)
			return a.group < b.group;
		return a.seq < b.seq;
	});
	std::vector<int> out;
	for (const Key& k : keys)
		out.push_back(k.elem);
	return out;
}

// ---------------------------------------------------------------------------
// Recursive atom orderings.

using ElementSet = std::vector<int>;  // sorted element indices

struct AtomOrdering {
	std::vector<std::vector<int>> global;  // per element, used when no context entry
	std::map<std::pair<int, ElementSet>, std::vector<int>> contextual;

	const std::vector<int>& at(int x, const ElementSet& f) const
	{
		auto it = contextual.find({x, f});
		if (it != contextual.end())
			return it->second;
		if (x < static_cast<int>(global.size()) && !global[x].empty())
			return global[x];
		static const std::vector<int> none;
		return none;
	}
};

inline AtomOrdering explicit_atom_ordering(const EvenPoset& ep)
{
	AtomOrdering ord;
	ord.global.resize(ep.poset.size());
	for (int x = 0; x < ep.poset.size(); ++x)
		if (x != ep.poset.top())
			ord.global[x] = atom_order(ep, ep.elements[x]);
	return ord;
}

inline ElementSet to_set(const Bits& b)
{
	ElementSet out;
	for (auto z = b.find_first(); z != Bits::npos; z = b.find_next(z))
		out.push_back(static_cast<int>(z));
	return out;
}

// Atoms z of [alpha, 1̂] lying above some earlier atom (membership reading).
inline Bits earlier_members(const Poset& p, int alpha, const Bits& earlier_up)
{
	Bits f(p.size());
	for (int z : p.up(alpha))
		if (earlier_up.test(z))
			f.set(z);
	return f;
}

// Atoms z of [alpha, 1̂] covering some earlier atom (cover reading).
inline Bits earlier_covers(const Poset& p, int alpha, const std::vector<int>& earlier)
{
	Bits f(p.size());
	for (int z : p.up(alpha))
		for (int a : earlier)
			if (std::binary_search(p.down(z).begin(), p.down(z).end(), a)) {
				f.set(z);
				break;
			}
	return f;
}

struct RaoReport {
	bool ok = true;
	std::string violation;
	int x = -1, i = -1, j = -1, y = -1;
	bool readings_agree = true;
	int readings_diverge_at = -1;
};

namespace detail {

inline bool rao_condition_two(const Poset& p, int alpha, const Bits& earlier_up, const Bits& f, int* bad_y)
{
	Bits need = earlier_up & p.upset(alpha);
	need.reset(alpha);
	if (need.none())
		return true;
	Bits cover(p.size());
	for (auto z = f.find_first(); z != Bits::npos; z = f.find_next(z))
		cover |= p.upset(static_cast<int>(z));
	Bits missing = need - cover;
	if (missing.none())
		return true;
	if (bad_y)
		*bad_y = static_cast<int>(missing.find_first());
	return false;
}

}  // namespace detail

inline RaoReport verify_recursive_atom_ordering(const Poset& p, const AtomOrdering& ord)
{
	RaoReport rep;
	if (!p.bounded()) {
		rep.ok = false;
		rep.violation = "poset is not bounded";
		return rep;
	}
	std::set<std::pair<int, ElementSet>> done;
	std::function<bool(int, const ElementSet&)> check = [&](int x, const ElementSet& f) -> bool {
		if (x == p.top() || !done.insert({x, f}).second)
			return true;
		const auto& atoms = p.up(x);
		if (atoms.size() == 1 && atoms[0] == p.top())
			return true;
		const auto& order = ord.at(x, f);
		std::vector<int> sa(atoms.begin(), atoms.end()), so(order.begin(), order.end());
		std::sort(sa.begin(), sa.end());
		std::sort(so.begin(), so.end());
		if (sa != so) {
			rep = {false, "ordering is not a permutation of the atoms", x, -1, -1, -1, rep.readings_agree, rep.readings_diverge_at};
			return false;
		}
		std::vector<int> head(order.begin(), order.begin() + std::min(order.size(), f.size()));
		std::sort(head.begin(), head.end());
		if (head != f) {
			rep = {false, "atoms lying in earlier intervals do not come first", x, -1, -1, -1, rep.readings_agree, rep.readings_diverge_at};
			return false;
		}
		Bits earlier_up(p.size());
		std::vector<int> earlier;
		for (std::size_t j = 0; j < order.size(); ++j) {
			int a = order[j];
			Bits fj = earlier_members(p, a, earlier_up);
			if (fj != earlier_covers(p, a, earlier) && rep.readings_agree) {
				rep.readings_agree = false;
				rep.readings_diverge_at = a;
			}
			int bad = -1;
			if (!detail::rao_condition_two(p, a, earlier_up, fj, &bad)) {
				rep.ok = false;
				rep.violation = "no earlier-interval atom below a common upper bound";
				rep.x = x;
				rep.j = a;
				rep.y = bad;
				for (int e : earlier)
					if (p.leq(e, bad)) {
						rep.i = e;
						break;
					}
				return false;
			}
			if (!check(a, to_set(fj)))
				return false;
			earlier_up |= p.upset(a);
			earlier.push_back(a);
		}
		return true;
	};
	check(p.bottom(), {});
	return rep;
}

struct RaoSearch {
	enum Status { Found, None, BudgetExceeded };
	Status status = None;
	AtomOrdering ordering;
	std::int64_t nodes = 0;
};

inline RaoSearch find_recursive_atom_ordering(const Poset& p, std::int64_t budget = 10000000)
{
	RaoSearch res;
	if (!p.bounded())
		throw PosetError("poset is not bounded");
	std::map<std::pair<int, ElementSet>, bool> memo;
	std::function<bool(int, const ElementSet&)> search = [&](int x, const ElementSet& f) -> bool {
		auto key = std::make_pair(x, f);
		if (auto it = memo.find(key); it != memo.end())
			return it->second;
		const auto& atoms = p.up(x);
		if (x == p.top() || (atoms.size() == 1 && atoms[0] == p.top())) {
			res.ordering.contextual[key] = atoms;
			return memo[key] = true;
		}
		int t = static_cast<int>(atoms.size());
		if (t > 30)
			throw evenshell::BudgetExceeded("interval has too many atoms");
		std::uint32_t fmask = 0;
		for (int i = 0; i < t; ++i)
			if (std::binary_search(f.begin(), f.end(), atoms[i]))
				fmask |= 1u << i;
		int fsize = std::popcount(fmask);
		std::unordered_set<std::uint32_t> dead;
		std::vector<int> seq;
		std::function<bool(std::uint32_t, const Bits&)> rec = [&](std::uint32_t placed, const Bits& earlier_up) -> bool {
			if (++res.nodes > budget)
				throw evenshell::BudgetExceeded("search budget exceeded");
			if (std::popcount(placed) == t)
				return true;
			if (dead.count(placed))
				return false;
			bool in_f = std::popcount(placed & fmask) < fsize;
			std::vector<std::pair<int, int>> cand;  // (-|F_a|, i)
			std::vector<Bits> fs(t);
			for (int i = 0; i < t; ++i) {
				if ((placed >> i) & 1)
					continue;
				if (in_f && !((fmask >> i) & 1))
					continue;
				fs[i] = earlier_members(p, atoms[i], earlier_up);
				if (!detail::rao_condition_two(p, atoms[i], earlier_up, fs[i], nullptr))
					continue;
				cand.push_back({-static_cast<int>(fs[i].count()), i});
			}
			std::sort(cand.begin(), cand.end());
			for (auto [neg, i] : cand) {
				if (!search(atoms[i], to_set(fs[i])))
					continue;
				seq.push_back(atoms[i]);
				if (rec(placed | (1u << i), earlier_up | p.upset(atoms[i])))
					return true;
				seq.pop_back();
			}
			dead.insert(placed);
			return false;
		};
		bool ok = rec(0, Bits(p.size()));
		if (ok)
			res.ordering.contextual[key] = seq;
		return memo[key] = ok;
	};
	try {
		res.status = search(p.bottom(), {}) ? RaoSearch::Found : RaoSearch::None;
	} catch (const evenshell::BudgetExceeded&) {
		res.status = RaoSearch::BudgetExceeded;
	}
	return res;
}

// ---------------------------------------------------------------------------
// Chain-edge labelings stored as a trie over maximal-chain prefixes.

struct ChainEdgeLabeling {
	struct Node {
		int element;
		int parent;
		std::int64_t label;  // label of the cover from the parent's element
		std::vector<int> children;
	};
	std::vector<Node> nodes;  // node 0 is the bottom

	int child(int u, int y) const
	{
		for (int c : nodes[u].children)
			if (nodes[c].element == y)
				return c;
		return -1;
	}
};

// Labels from a function of (chain prefix ending at x, y).
inline ChainEdgeLabeling labeling_from_function(
	const Poset& p, const std::function<std::int64_t(const std::vector<int>&, int)>& rho, std::size_t limit = 5000000)
{
	ChainEdgeLabeling lab;
	lab.nodes.push_back({p.bottom(), -1, 0, {}});
	std::vector<int> prefix{p.bottom()};
	std::function<void(int)> grow = [&](int u) {
		int x = lab.nodes[u].element;
		for (int y : p.up(x)) {
			if (lab.nodes.size() >= limit)
				throw evenshell::BudgetExceeded("labeling trie too large");
			int c = static_cast<int>(lab.nodes.size());
			lab.nodes.push_back({y, u, rho(prefix, y), {}});
			lab.nodes[u].children.push_back(c);
			prefix.push_back(y);
			grow(c);
			prefix.pop_back();
		}
	};
	grow(0);
	return lab;
}

// Labels built from an atom ordering by the recursive construction, whether or
// not the ordering is recursive. Only a recursive ordering yields a CL-labeling.
inline ChainEdgeLabeling induced_labeling(const Poset& p, const AtomOrdering& ord, std::size_t limit = 5000000)
{
	if (!p.bounded())
		throw PosetError("poset is not bounded");
	ChainEdgeLabeling lab;
	lab.nodes.push_back({p.bottom(), -1, 0, {}});
	std::function<void(int, const ElementSet&)> grow = [&](int u, const ElementSet& f) {
		int x = lab.nodes[u].element;
		if (x == p.top())
			return;
		const auto& order = ord.at(x, f);
		std::int64_t rho = lab.nodes[u].label;
		std::int64_t fs = static_cast<std::int64_t>(f.size());
		Bits earlier_up(p.size());
		for (std::size_t j = 0; j < order.size(); ++j) {
			if (lab.nodes.size() >= limit)
				throw evenshell::BudgetExceeded("labeling trie too large");
			std::int64_t label;
			if (u == 0)
				label = static_cast<std::int64_t>(j) + 1;
			else if (static_cast<std::int64_t>(j) < fs)
				label = rho - fs + static_cast<std::int64_t>(j);
			else
				label = rho + 1 + static_cast<std::int64_t>(j) - fs;
			int a = order[j];
			int c = static_cast<int>(lab.nodes.size());
			lab.nodes.push_back({a, u, label, {}});
			lab.nodes[u].children.push_back(c);
			grow(c, to_set(earlier_members(p, a, earlier_up)));
			earlier_up |= p.upset(a);
		}
	};
	grow(0, {});
	return lab;
}

inline ChainEdgeLabeling cl_labeling_from_rao(const Poset& p, const AtomOrdering& ord, std::size_t limit = 5000000)
{
	RaoReport rep = verify_recursive_atom_ordering(p, ord);
	if (!rep.ok)
		throw PosetError("ordering is not a recursive atom ordering: " + rep.violation);
	return induced_labeling(p, ord, limit);
}

inline std::vector<int> chain_of_node(const ChainEdgeLabeling& lab, int u)
{
	std::vector<int> out;
	for (; u >= 0; u = lab.nodes[u].parent)
		out.push_back(lab.nodes[u].element);
	std::reverse(out.begin(), out.end());
	return out;
}

// Every rooted interval [x, y] has one strictly increasing maximal chain,
// and it is lexicographically first.
inline bool verify_cl_labeling(const Poset& p, const ChainEdgeLabeling& lab)
{
	int nn = static_cast<int>(lab.nodes.size());
	for (int u = 0; u < nn; ++u) {
		int x = lab.nodes[u].element;
		// increasing-chain counts to each y, and the increasing endpoint node
		std::map<int, int> inc_count, inc_node;
		std::vector<std::pair<int, bool>> stack{{u, true}};
		while (!stack.empty()) {
			auto [v, inc] = stack.back();
			stack.pop_back();
			for (int c : lab.nodes[v].children) {
				bool ok = inc && (v == u || lab.nodes[c].label > lab.nodes[v].label);
				int y = lab.nodes[c].element;
				if (ok) {
					++inc_count[y];
					inc_node[y] = c;
				}
				stack.push_back({c, ok});
			}
		}
		const Bits& ups = p.upset(x);
		for (auto yb = ups.find_first(); yb != Bits::npos; yb = ups.find_next(yb)) {
			int y = static_cast<int>(yb);
			if (y == x)
				continue;
			if (inc_count[y] != 1)
				return false;
			// greedy lexicographic walk toward y
			std::vector<int> frontier{u};
			while (true) {
				bool reached = false;
				for (int v : frontier)
					reached |= lab.nodes[v].element == y;
				if (reached) {
					if (frontier.size() != 1 || frontier[0] != inc_node[y])
						return false;
					break;
				}
				std::int64_t best = 0;
				bool any = false;
				for (int v : frontier)
					for (int c : lab.nodes[v].children)
						if (p.leq(lab.nodes[c].element, y) && (!any || lab.nodes[c].label < best)) {
							best = lab.nodes[c].label;
							any = true;
						}
				if (!any)
					return false;
				std::vector<int> next;
				for (int v : frontier)
					for (int c : lab.nodes[v].children)
						if (p.leq(lab.nodes[c].element, y) && lab.nodes[c].label == best)
							next.push_back(c);
				frontier = std::move(next);
			}
		}
	}
	return true;
}

// Maximal chains whose labels weakly decrease.
inline std::vector<std::vector<int>> falling_chains(const Poset& p, const ChainEdgeLabeling& lab)
{
	std::vector<std::vector<int>> out;
	std::function<void(int)> walk = [&](int u) {
		if (lab.nodes[u].element == p.top() && lab.nodes[u].children.empty()) {
			out.push_back(chain_of_node(lab, u));
			return;
		}
		for (int c : lab.nodes[u].children)
			if (u == 0 || lab.nodes[c].label <= lab.nodes[u].label)
				walk(c);
	};
	if (!lab.nodes.empty())
		walk(0);
	return out;
}

inline std::map<int, int> counts_by_length(const std::vector<std::vector<int>>& chains)
{
	std::map<int, int> out;
	for (const auto& c : chains)
		++out[static_cast<int>(c.size()) - 1];
	return out;
}

inline std::string chain_to_string(const EvenPoset& ep, const std::vector<int>& chain)
{
	std::string s;
	for (std::size_t t = 0; t < chain.size(); ++t) {
		if (t)
			s += "<";
		s += ep.name(chain[t]);
	}
	return s;
}

// ---------------------------------------------------------------------------
// Falling test through the threshold elements of the explicit ordering.

inline bool threshold_falling_test(const EvenPoset& ep, const std::vector<int>& chain)
{
	const Poset& p = ep.poset;
	if (chain.empty() || chain.front() != p.bottom() || chain.back() != p.top())
		throw PosetError("chain is not maximal");
	for (std::size_t t = 0; t + 1 < chain.size(); ++t) {
		const auto& ups = p.up(chain[t]);
		if (!std::binary_search(ups.begin(), ups.end(), chain[t + 1]))
			throw PosetError("chain is not maximal");
	}
	CanonicalParams cp = canonical_params(ep);
	int n = cp.n;
	for (std::size_t t = 1; t + 1 < chain.size(); ++t) {
		Mask i = ep.elements[chain[t - 1]];
		Mask ij = ep.elements[chain[t]];
		Mask j = ep.elements[chain[t + 1]];
		auto atoms = atom_order(ep, i);
		if (atoms.front() == chain[t])
			return false;
		auto pos_i = lex_positions(ep, i);
		auto pos_j = lex_positions(ep, ij);
		int end_i = tail_end_position(ep, i), end_j = tail_end_position(ep, ij);
		Mask d = ij & ~i;
		auto big = [&](int e) { return pos_i[e] > end_i; };
		Mask edges = d & (cp.a_edges | cp.b_edges);
		bool strict = true;
		int x = -1;
		bool only_big_edges = d && (d & ~(cp.a_edges | cp.b_edges)) == 0;
		for (int e = 0; e < 64 && only_big_edges; ++e)
			if (has(d, e) && !big(e))
				only_big_edges = false;
		bool has_small_elem = false, has_big_edge = false;
		for (int e = 0; e < 64; ++e) {
			if (!has(d, e))
				continue;
			if (pos_i[e] <= end_i)
				has_small_elem = true;
			if (has(edges, e) && big(e))
				has_big_edge = true;
		}
		Mask free_v = cp.verts & ~ij;
		if ((d & ~cp.verts) == 0 && (d & 3)) {
			x = 1;  // vertex 2
		} else if (popcount(d) == 2 && popcount(d & cp.verts) == 1 && popcount(d & cp.a_edges) == 1 &&
		           !big(std::countr_zero(d & cp.a_edges))) {
			int v = std::countr_zero(d & cp.verts);
			x = v;
			if (cp.ell) {
				int b1 = n + cp.two_m;
				if (pos_j[b1] < pos_j[v])
					x = b1;
			}
		} else if (only_big_edges) {
			x = -2;  // the end of the tail
			strict = false;
		} else if (free_v && has_small_elem && has_big_edge && popcount(d & 3) % 2 == 0) {
			x = std::countr_zero(free_v);
			strict = false;
		} else {
			auto sd = sorted_by(pos_j, d);
			x = sd.back();
		}
		auto sj = sorted_by(pos_j, j & ~ij);
		int m = sj.front();
		int px = x == -2 ? end_j : pos_j[x];
		bool below = strict ? pos_j[m] < px : pos_j[m] <= px;
		if (!below)
			return false;
	}
	return true;
}

// Whether a falling chain's length and its step adding vertex 1 fit the case table.
inline bool falling_shape_ok(const EvenPoset& ep, const std::vector<int>& chain, const FamilyTag& tag)
{
	CanonicalParams cp = canonical_params(ep);
	Mask a = ep.admissible;
	int half = popcount(a) / 2, l = cp.ell;
	int len = static_cast<int>(chain.size()) - 1;
	Mask step = 0;
	for (std::size_t t = 1; t < chain.size(); ++t) {
		Mask d = ep.elements[chain[t]] & ~ep.elements[chain[t - 1]];
		if (has(d, 0))
			step = d;
	}
	Mask other = step & ~Mask{1};
	auto count = [&](Mask m) { return popcount(other & m); };
	Mask tailv = cp.verts & ~Mask{3};
	bool is_12b = popcount(other) == 2 && has(other, 1) && count(cp.b_edges) == 1;
	bool is_1vb = popcount(other) == 2 && count(tailv) == 1 && count(cp.b_edges) == 1;
	bool is_12aa = popcount(other) == 3 && has(other, 1) && count(cp.a_edges) == 2;
	bool is_1a = popcount(other) == 1 && count(cp.a_edges) == 1;
	bool is_1b = popcount(other) == 1 && count(cp.b_edges) == 1;
	bool is_1aa = popcount(other) == 2 && count(cp.a_edges) == 2;
	bool is_1av = popcount(other) == 2 && count(cp.a_edges) == 1 && count(tailv) == 1;
	bool all_v = (a & cp.verts) == cp.verts;
	if (cp.odd()) {
		if (all_v)
			return false;
		if (l)
			return len == half + l && is_1b;
		return len == half && (is_1aa || is_1av);
	}
	if (!all_v) {
		if (l)
			return len == half + l + 1 && is_1b;
		return len == half + 1 && (is_1aa || is_1av);
	}
	bool primed = tag.primed();
	if (l)
		return len == half + l - 1 && (is_12b || (primed && is_1vb));
	if (!primed)
		return len == half - 1 && is_12aa;
	return (len == half - 1 || len == half) && (is_12aa || is_1a);
}

// ---------------------------------------------------------------------------
// Brute-force shelling of small complexes.

struct ShellResult {
	enum Status { Shellable, NotShellable, TooLarge };
	Status status = TooLarge;
	std::vector<int> order;  // facet indices of a shelling
};

// Facet k may follow the set S iff every F_k ∩ F_i (i in S) lies in some
// F_k ∩ F_j (j in S) of size |F_k| - 1.
inline ShellResult is_shellable_bruteforce(const SimplicialComplex& kin, int max_facets = 20)
{
	ShellResult res;
	SimplicialComplex k = normalized(kin);
	int f = static_cast<int>(k.facets.size());
	if (f > max_facets || f > 24)
		return res;
	if (f <= 1) {
		res.status = ShellResult::Shellable;
		for (int i = 0; i < f; ++i)
			res.order.push_back(i);
		return res;
	}
	std::vector<std::vector<int>> inter(f, std::vector<int>(f));
	std::vector<std::vector<std::vector<int>>> sets(f, std::vector<std::vector<int>>(f));
	for (int i = 0; i < f; ++i)
		for (int j = 0; j < f; ++j) {
			std::set_intersection(k.facets[i].begin(), k.facets[i].end(), k.facets[j].begin(), k.facets[j].end(),
			                      std::back_inserter(sets[i][j]));
			inter[i][j] = static_cast<int>(sets[i][j].size());
		}
	// sub[i][j]: facets g with F_i ∩ F_j ⊆ F_i ∩ F_g and |F_i ∩ F_g| = |F_i| - 1
	std::vector<std::vector<std::uint32_t>> sub(f, std::vector<std::uint32_t>(f, 0));
	for (int i = 0; i < f; ++i)
		for (int j = 0; j < f; ++j)
			for (int g = 0; g < f; ++g)
				if (g != i && inter[i][g] == static_cast<int>(k.facets[i].size()) - 1 &&
				    std::includes(sets[i][g].begin(), sets[i][g].end(), sets[i][j].begin(), sets[i][j].end()))
					sub[i][j] |= 1u << g;
	std::uint32_t full = (f == 32) ? ~0u : ((1u << f) - 1);
	std::vector<int> prev(std::size_t(1) << f, -2);
	prev[0] = -1;
	for (std::uint32_t s = 0; s <= full; ++s) {
		if (prev[s] == -2)
			continue;
		for (int i = 0; i < f; ++i) {
			if ((s >> i) & 1)
				continue;
			std::uint32_t t = s | (1u << i);
			if (prev[t] != -2)
				continue;
			bool ok = true;
			for (int j = 0; j < f && ok; ++j)
				if ((s >> j) & 1)
					ok = (sub[i][j] & s) != 0;
			if (ok)
				prev[t] = i;
		}
		if (s == full)
			break;
	}
	if (prev[full] == -2) {
		res.status = ShellResult::NotShellable;
		return res;
	}
	res.status = ShellResult::Shellable;
	for (std::uint32_t s = full; s; s &= ~(1u << prev[s]))
		res.order.push_back(prev[s]);
	std::reverse(res.order.begin(), res.order.end());
	// report indices into the caller's facet list
	std::vector<int> map;
	for (const auto& fac : k.facets) {
		for (int i = 0; i < static_cast<int>(kin.facets.size()); ++i) {
			auto c = kin.facets[i];
			std::sort(c.begin(), c.end());
			if (c == fac) {
				map.push_back(i);
				break;
			}
		}
	}
	for (int& o : res.order)
		o = map[o];
	return res;
}

// Independent check of a proposed shelling order.
inline bool is_shelling_order(const SimplicialComplex& k, const std::vector<int>& order)
{
	for (std::size_t t = 1; t < order.size(); ++t) {
		auto fk = k.facets[order[t]];
		std::sort(fk.begin(), fk.end());
		std::vector<std::vector<int>> parts;
		for (std::size_t s = 0; s < t; ++s) {
			auto fi = k.facets[order[s]];
			std::sort(fi.begin(), fi.end());
			std::vector<int> c;
			std::set_intersection(fk.begin(), fk.end(), fi.begin(), fi.end(), std::back_inserter(c));
			parts.push_back(c);
		}
		for (const auto& c : parts) {
			bool covered = false;
			for (const auto& d : parts)
				if (d.size() + 1 == fk.size() && std::includes(d.begin(), d.end(), c.begin(), c.end()))
					covered = true;
			if (!covered)
				return false;
		}
	}
	return true;
}

// Poset-level verdict: brute force when small, otherwise a recursive atom ordering.
struct PosetShellReport {
	enum Verdict { Shellable, NotShellable, Unknown };
	Verdict verdict = Unknown;
	std::string method;
	std::vector<std::vector<int>> shelling;  // facets (element chains) in shelling order
	AtomOrdering ordering;
	int witness_x = -1, witness_y = -1;  // non-shellable interval
	int facets = 0;
};

inline PosetShellReport shell_poset(const Poset& p, int max_facets = 14, std::int64_t budget = 10000000,
                                    bool search_intervals = true)
{
	PosetShellReport rep;
	if (p.bottom() == p.top())
		throw PosetError("proper part needs length at least one");
	auto chains = chain_counts_to_top(p);
	double total = chains[p.bottom()];
	rep.facets = total > 1e9 ? -1 : static_cast<int>(total);
	if (total <= max_facets) {
		SimplicialComplex k = proper_part_complex(p);
		ShellResult sr = is_shellable_bruteforce(k, max_facets);
		if (sr.status == ShellResult::Shellable) {
			rep.verdict = PosetShellReport::Shellable;
			rep.method = "bruteforce";
			for (int i : sr.order)
				rep.shelling.push_back(k.facets[i]);
			return rep;
		}
		if (sr.status == ShellResult::NotShellable) {
			rep.verdict = PosetShellReport::NotShellable;
			rep.method = "bruteforce";
			rep.witness_x = p.bottom();
			rep.witness_y = p.top();
			return rep;
		}
	}
	RaoSearch rs = find_recursive_atom_ordering(p, budget);
	if (rs.status == RaoSearch::Found) {
		rep.verdict = PosetShellReport::Shellable;
		rep.method = "recursive-atom-ordering";
		rep.ordering = std::move(rs.ordering);
		return rep;
	}
	if (search_intervals) {
		// a non-shellable closed interval refutes shellability
		auto cnt_from = [&](int x, int y) {
			Poset q = interval(p, x, y);
			return chain_counts_to_top(q)[q.bottom()];
		};
		std::vector<std::pair<int, std::pair<int, int>>> cands;
		for (int x = 0; x < p.size(); ++x)
			for (auto yb = p.upset(x).find_first(); yb != Bits::npos; yb = p.upset(x).find_next(yb)) {
				int y = static_cast<int>(yb);
				if (y == x || (x == p.bottom() && y == p.top()))
					continue;
				int sz = static_cast<int>((p.upset(x) & p.downset(y)).count());
				if (sz >= 4)
					cands.push_back({sz, {x, y}});
			}
		std::sort(cands.begin(), cands.end());
		for (auto& [sz, xy] : cands) {
			if (cnt_from(xy.first, xy.second) > max_facets)
				continue;
			Poset q = interval(p, xy.first, xy.second);
			if (length(q) < 2)
				continue;
			if (is_shellable_bruteforce(proper_part_complex(q), max_facets).status == ShellResult::NotShellable) {
				rep.verdict = PosetShellReport::NotShellable;
				rep.method = "interval-bruteforce";
				rep.witness_x = xy.first;
				rep.witness_y = xy.second;
				return rep;
			}
		}
	}
	rep.method = rs.status == RaoSearch::BudgetExceeded ? "budget-exceeded" : "undetermined";
	return rep;
}

}  // namespace evenshell

#endif
