#ifndef EVENSHELL_MULTIGRAPH_HPP
#define EVENSHELL_MULTIGRAPH_HPP

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace evenshell {

using Mask = std::uint64_t;

inline int popcount(Mask m) { return std::popcount(m); }
inline Mask bit(int i) { return Mask{1} << i; }
inline bool has(Mask m, int i) { return (m >> i) & 1; }

struct GraphError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

struct Edge {
	int u, v;           // internal vertex indices, u < v
	std::string label;  // empty for simple edges
};

struct Bundle {
	int u, v;
	std::vector<int> labels;  // indices into Multigraph::labels
	Mask mask = 0;            // ground bits of the bundle edges
};

// Ground bits: vertex i is bit i, labeled edge k is bit n + k (file order).
class Multigraph {
public:
	Multigraph() = default;

	// ids[i] is the external id of vertex i; edges use internal indices.
	static Multigraph build(std::vector<int> ids, const std::vector<Edge>& edges)
	{
		Multigraph g;
		g.ids_ = std::move(ids);
		int n = static_cast<int>(g.ids_.size());
		std::map<std::pair<int, int>, std::vector<int>> by_pair;
		std::set<std::string> seen;
		for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
			Edge e = edges[k];
			if (e.u == e.v)
				throw GraphError("loop edge at vertex " + std::to_string(g.ids_.at(e.u)));
			if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
				throw GraphError("edge endpoint out of range");
			if (e.u > e.v)
				std::swap(e.u, e.v);
			if (!e.label.empty() && !seen.insert(e.label).second)
				throw GraphError("duplicate label " + e.label);
			by_pair[{e.u, e.v}].push_back(k);
		}
		g.simple_adj_.assign(n, 0);
		g.adj_.assign(n, 0);
		for (const auto& [pr, ks] : by_pair) {
			g.adj_[pr.first] |= bit(pr.second);
			g.adj_[pr.second] |= bit(pr.first);
			if (ks.size() == 1) {
				if (!edges[ks[0]].label.empty())
					throw GraphError("label " + edges[ks[0]].label + " on a simple edge");
				g.simple_adj_[pr.first] |= bit(pr.second);
				g.simple_adj_[pr.second] |= bit(pr.first);
				g.simple_edges_.push_back(pr);
			} else {
				for (int k : ks)
					if (edges[k].label.empty())
						throw GraphError("bundle edge missing label");
			}
		}
		if (n + static_cast<int>(seen.size()) > 64)
			throw GraphError("ground set larger than 64 elements");
		// labels in file order; bundles ordered by their first label
		std::map<std::pair<int, int>, int> bundle_of_pair;
		for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
			if (edges[k].label.empty())
				continue;
			int u = std::min(edges[k].u, edges[k].v), v = std::max(edges[k].u, edges[k].v);
			int li = static_cast<int>(g.labels_.size());
			g.labels_.push_back(edges[k].label);
			auto it = bundle_of_pair.find({u, v});
			if (it == bundle_of_pair.end()) {
				it = bundle_of_pair.emplace(std::make_pair(u, v), static_cast<int>(g.bundles_.size())).first;
				g.bundles_.push_back(Bundle{u, v, {}, 0});
			}
			Bundle& b = g.bundles_[it->second];
			b.labels.push_back(li);
			b.mask |= bit(n + li);
			g.label_bundle_.push_back(it->second);
		}
		return g;
	}

	int n() const { return static_cast<int>(ids_.size()); }
	int num_labels() const { return static_cast<int>(labels_.size()); }
	int ground_size() const { return n() + num_labels(); }
	int id(int v) const { return ids_[v]; }
	const std::vector<int>& ids() const { return ids_; }
	const std::string& label(int k) const { return labels_[k]; }
	const std::vector<std::string>& labels() const { return labels_; }
	const std::vector<Bundle>& bundles() const { return bundles_; }
	int bundle_of_label(int k) const { return label_bundle_[k]; }
	const std::vector<std::pair<int, int>>& simple_edges() const { return simple_edges_; }

	Mask vertex_mask() const { return n() == 64 ? ~Mask{0} : bit(n()) - 1; }
	Mask edge_mask() const { return ground() & ~vertex_mask(); }
	Mask ground() const { return ground_size() == 64 ? ~Mask{0} : bit(ground_size()) - 1; }
	Mask simple_neighbors(int v) const { return simple_adj_[v]; }
	Mask neighbors(int v) const { return adj_[v]; }
	bool adjacent(int u, int v) const { return has(adj_[u], v); }
	bool simple_adjacent(int u, int v) const { return has(simple_adj_[u], v); }

	int vertex_of_id(int ident) const
	{
		for (int i = 0; i < n(); ++i)
			if (ids_[i] == ident)
				return i;
		return -1;
	}
	int bit_of_label(const std::string& s) const
	{
		for (int k = 0; k < num_labels(); ++k)
			if (labels_[k] == s)
				return n() + k;
		return -1;
	}

	// Total edge count counting bundle multiplicity.
	int edge_count() const { return static_cast<int>(simple_edges_.size()) + num_labels(); }

	// Edge list in a form accepted by build().
	std::vector<Edge> edge_list() const
	{
		std::vector<Edge> out;
		for (int k = 0; k < num_labels(); ++k) {
			const Bundle& b = bundles_[label_bundle_[k]];
			out.push_back({b.u, b.v, labels_[k]});
		}
		for (auto [u, v] : simple_edges_)
			out.push_back({u, v, ""});
		return out;
	}

private:
	std::vector<int> ids_;
	std::vector<std::string> labels_;
	std::vector<int> label_bundle_;
	std::vector<Bundle> bundles_;
	std::vector<std::pair<int, int>> simple_edges_;
	std::vector<Mask> simple_adj_, adj_;
};

inline Multigraph parse_graph(const std::string& text)
{
	std::istringstream in(text);
	std::string line;
	int n = -1, lineno = 0;
	std::vector<std::tuple<int, int, std::string>> raw;
	while (std::getline(in, line)) {
		++lineno;
		if (auto h = line.find('#'); h != std::string::npos)
			line.erase(h);
		std::istringstream ls(line);
		std::string kw;
		if (!(ls >> kw))
			continue;
		auto bad = [&] { return GraphError("malformed line " + std::to_string(lineno) + ": " + line); };
		if (kw == "vertices") {
			if (!(ls >> n) || n < 0)
				throw bad();
		} else if (kw == "edge") {
			int u, v;
			std::string label, extra;
			if (!(ls >> u >> v))
				throw bad();
			ls >> label;
			if (ls >> extra)
				throw bad();
			raw.emplace_back(u, v, label);
		} else {
			throw bad();
		}
	}
	if (n < 0) {
		for (auto& [u, v, l] : raw)
			n = std::max({n, u, v});
		n = std::max(n, 0);
	}
	std::vector<int> ids(n);
	for (int i = 0; i < n; ++i)
		ids[i] = i + 1;
	std::vector<Edge> edges;
	for (auto& [u, v, l] : raw) {
		if (u == v)
			throw GraphError("loop edge at vertex " + std::to_string(u));
		if (u < 1 || v < 1 || u > n || v > n)
			throw GraphError("edge endpoint out of range");
		edges.push_back({u - 1, v - 1, l});
	}
	return Multigraph::build(ids, edges);
}

inline std::string format_graph(const Multigraph& g)
{
	std::ostringstream out;
	out << "vertices " << g.n() << "\n";
	for (const Edge& e : g.edge_list()) {
		out << "edge " << g.id(e.u) << " " << g.id(e.v);
		if (!e.label.empty())
			out << " " << e.label;
		out << "\n";
	}
	return out.str();
}

// Vertices first (ascending id), then labels in ground order.
inline std::string set_to_string(const Multigraph& g, Mask s)
{
	if (s == 0)
		return "∅";
	bool wide = false;
	for (int v = 0; v < g.n(); ++v)
		wide |= g.id(v) > 9;
	std::vector<std::pair<int, int>> vs;
	for (int v = 0; v < g.n(); ++v)
		if (has(s, v))
			vs.push_back({g.id(v), v});
	std::sort(vs.begin(), vs.end());
	std::string out;
	for (auto [ident, v] : vs) {
		if (wide && !out.empty())
			out += ".";
		out += std::to_string(ident);
	}
	if (wide && !out.empty() && (s & g.edge_mask()))
		out += ".";
	for (int k = 0; k < g.num_labels(); ++k)
		if (has(s, g.n() + k))
			out += g.label(k);
	return out;
}

inline std::vector<std::string> set_tokens(const Multigraph& g, Mask s)
{
	std::vector<std::string> out;
	std::vector<int> vs;
	for (int v = 0; v < g.n(); ++v)
		if (has(s, v))
			vs.push_back(g.id(v));
	std::sort(vs.begin(), vs.end());
	for (int x : vs)
		out.push_back(std::to_string(x));
	for (int k = 0; k < g.num_labels(); ++k)
		if (has(s, g.n() + k))
			out.push_back(g.label(k));
	return out;
}

// Whitespace-separated tokens: vertex ids or edge labels.
inline Mask parse_set(const Multigraph& g, const std::string& text)
{
	std::istringstream in(text);
	std::string tok;
	Mask s = 0;
	while (in >> tok) {
		int b = g.bit_of_label(tok);
		if (b < 0) {
			bool numeric = !tok.empty() && std::all_of(tok.begin(), tok.end(), ::isdigit);
			int v = numeric ? g.vertex_of_id(std::stoi(tok)) : -1;
			if (v < 0)
				throw GraphError("element not in ground set: " + tok);
			b = v;
		}
		s |= bit(b);
	}
	return s;
}

// Vertices of s connected through edges present in s. Bundle pairs count only when
// some bundle edge is in s; simple edges are implied between present vertices.
inline std::vector<Mask> component_masks(const Multigraph& g, Mask s)
{
	int n = g.n();
	Mask verts = s & g.vertex_mask();
	std::vector<Mask> link(n, 0);
	for (int v = 0; v < n; ++v)
		link[v] = g.simple_neighbors(v);
	for (const Bundle& b : g.bundles())
		if (s & b.mask) {
			link[b.u] |= bit(b.v);
			link[b.v] |= bit(b.u);
		}
	std::vector<Mask> out;
	Mask left = verts;
	while (left) {
		int v0 = std::countr_zero(left);
		Mask comp = bit(v0), frontier = bit(v0);
		while (frontier) {
			int v = std::countr_zero(frontier);
			frontier &= frontier - 1;
			Mask nb = link[v] & verts & ~comp;
			comp |= nb;
			frontier |= nb;
		}
		left &= ~comp;
		Mask edges = 0;
		for (const Bundle& b : g.bundles())
			if (has(comp, b.u))
				edges |= b.mask & s;
		out.push_back(comp | edges);
	}
	return out;
}

inline void require_subset(const Multigraph& g, Mask s)
{
	if (s & ~g.ground())
		throw GraphError("element not in ground set");
}

inline bool is_semi_induced(const Multigraph& g, Mask s)
{
	require_subset(g, s);
	for (const Bundle& b : g.bundles()) {
		bool both = has(s, b.u) && has(s, b.v);
		if ((s & b.mask) && !both)
			return false;
		if (both && !(s & b.mask))
			return false;
	}
	return true;
}

// Subgraph spanned by a semi-induced set, keeping ids and labels. A bundle
// with a single surviving edge becomes a simple edge.
inline Multigraph subgraph(const Multigraph& g, Mask s)
{
	std::vector<int> map(g.n(), -1), ids;
	for (int v = 0; v < g.n(); ++v)
		if (has(s, v)) {
			map[v] = static_cast<int>(ids.size());
			ids.push_back(g.id(v));
		}
	std::vector<Edge> edges;
	for (int k = 0; k < g.num_labels(); ++k) {
		if (!has(s, g.n() + k))
			continue;
		const Bundle& b = g.bundles()[g.bundle_of_label(k)];
		bool single = popcount(b.mask & s) == 1;
		edges.push_back({map[b.u], map[b.v], single ? "" : g.label(k)});
	}
	for (auto [u, v] : g.simple_edges())
		if (has(s, u) && has(s, v))
			edges.push_back({map[u], map[v], ""});
	return Multigraph::build(ids, edges);
}

inline std::vector<Multigraph> components(const Multigraph& g)
{
	std::vector<Multigraph> out;
	for (Mask c : component_masks(g, g.ground()))
		out.push_back(subgraph(g, c));
	return out;
}

struct PiGraph {
	Multigraph graph;
	Mask vertices = 0;         // source vertex bits
	unsigned replaced = 0;     // source bundle indices replaced by simple edges
};

// Induced subgraph on `verts` of the graph with bundles in `replaced` made simple.
inline Multigraph pi_subgraph(const Multigraph& g, Mask verts, unsigned replaced)
{
	std::vector<int> map(g.n(), -1), ids;
	for (int v = 0; v < g.n(); ++v)
		if (has(verts, v)) {
			map[v] = static_cast<int>(ids.size());
			ids.push_back(g.id(v));
		}
	std::vector<Edge> edges;
	for (int k = 0; k < g.num_labels(); ++k) {
		int bi = g.bundle_of_label(k);
		const Bundle& b = g.bundles()[bi];
		if (has(verts, b.u) && has(verts, b.v) && !((replaced >> bi) & 1))
			edges.push_back({map[b.u], map[b.v], g.label(k)});
	}
	for (int bi = 0; bi < static_cast<int>(g.bundles().size()); ++bi) {
		const Bundle& b = g.bundles()[bi];
		if (has(verts, b.u) && has(verts, b.v) && ((replaced >> bi) & 1))
			edges.push_back({map[b.u], map[b.v], ""});
	}
	for (auto [u, v] : g.simple_edges())
		if (has(verts, u) && has(verts, v))
			edges.push_back({map[u], map[v], ""});
	return Multigraph::build(ids, edges);
}

inline std::vector<PiGraph> enumerate_pi_graphs(const Multigraph& g)
{
	if (g.n() > 30 || g.bundles().size() > 30)
		throw GraphError("graph too large for PI-graph enumeration");
	std::vector<PiGraph> out;
	int nb = static_cast<int>(g.bundles().size());
	for (Mask verts = 0; verts < bit(g.n()); ++verts) {
		unsigned present = 0;
		for (int bi = 0; bi < nb; ++bi)
			if (has(verts, g.bundles()[bi].u) && has(verts, g.bundles()[bi].v))
				present |= 1u << bi;
		for (unsigned rep = 0; rep < (1u << nb); ++rep) {
			if (rep & ~present)
				continue;
			out.push_back({pi_subgraph(g, verts, rep), verts, rep});
		}
	}
	return out;
}

// Admissibility per component: even vertex count, every vertex touching only
// simple edges included, and each bundle met in a nonzero even number.
inline bool is_admissible(const Multigraph& h, Mask a)
{
	if (a & ~h.ground())
		return false;
	Mask touched = 0;
	for (const Bundle& b : h.bundles()) {
		int c = popcount(a & b.mask);
		if (c == 0 || c % 2)
			return false;
		touched |= bit(b.u) | bit(b.v);
	}
	Mask forced = h.vertex_mask() & ~touched;
	if ((a & forced) != forced)
		return false;
	for (Mask comp : component_masks(h, h.ground()))
		if (popcount(a & comp & h.vertex_mask()) % 2)
			return false;
	return true;
}

// Sorted by (vertex part, edge part) ascending.
inline std::vector<Mask> enumerate_admissible(const Multigraph& h)
{
	Mask touched = 0;
	for (const Bundle& b : h.bundles())
		touched |= bit(b.u) | bit(b.v);
	Mask forced = h.vertex_mask() & ~touched;
	// even nonempty subsets per bundle
	std::vector<std::vector<Mask>> choices;
	for (const Bundle& b : h.bundles()) {
		std::vector<Mask> cs;
		for (Mask sub = b.mask;; sub = (sub - 1) & b.mask) {
			if (sub && popcount(sub) % 2 == 0)
				cs.push_back(sub);
			if (!sub)
				break;
		}
		std::sort(cs.begin(), cs.end());
		if (cs.empty())
			return {};
		choices.push_back(cs);
	}
	std::vector<Mask> edge_parts{0};
	for (const auto& cs : choices) {
		std::vector<Mask> next;
		for (Mask e : edge_parts)
			for (Mask c : cs)
				next.push_back(e | c);
		edge_parts = std::move(next);
	}
	std::sort(edge_parts.begin(), edge_parts.end());
	auto comps = component_masks(h, h.ground());
	std::vector<Mask> out;
	for (Mask sub = touched;; sub = (sub - 1) & touched) {
		Mask verts = sub | forced;
		bool ok = true;
		for (Mask c : comps)
			ok &= popcount(verts & c) % 2 == 0;
		if (ok)
			for (Mask e : edge_parts)
				out.push_back(verts | e);
		if (!sub)
			break;
	}
	std::sort(out.begin(), out.end(), [&](Mask x, Mask y) {
		Mask vm = h.vertex_mask();
		if ((x & vm) != (y & vm))
			return (x & vm) < (y & vm);
		return (x & ~vm) < (y & ~vm);
	});
	return out;
}

struct AdmissiblePair {
	PiGraph pi;
	Mask admissible;
};

inline std::vector<AdmissiblePair> a_star(const Multigraph& g)
{
	std::vector<AdmissiblePair> out;
	for (PiGraph& p : enumerate_pi_graphs(g))
		for (Mask a : enumerate_admissible(p.graph))
			out.push_back({p, a});
	return out;
}

}  // namespace evenshell

#endif
