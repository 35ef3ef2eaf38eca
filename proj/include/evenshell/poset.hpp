#ifndef EVENSHELL_POSET_HPP
#define EVENSHELL_POSET_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "homology.hpp"

namespace evenshell {

using Bits = boost::dynamic_bitset<>;

struct PosetError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

class Poset {
public:
	Poset() = default;

	// leq must be a partial order on indices 0..n-1.
	static Poset from_order(int n, const std::function<bool(int, int)>& leq, bool validate = true)
	{
		std::vector<Bits> above(n, Bits(n));
		for (int x = 0; x < n; ++x)
			for (int y = 0; y < n; ++y)
				if (leq(x, y))
					above[x].set(y);
		return from_upsets(std::move(above), validate);
	}

	// above[x] is the set of y with x ≤ y.
	static Poset from_upsets(std::vector<Bits> above, bool validate = true)
	{
		Poset p;
		int n = static_cast<int>(above.size());
		p.ge_ = std::move(above);
		if (validate) {
			for (int x = 0; x < n; ++x) {
				if (!p.ge_[x].test(x))
					throw PosetError("order is not reflexive");
				for (int y = p.ge_[x].find_first(); y != static_cast<int>(Bits::npos); y = p.ge_[x].find_next(y)) {
					if (y != x && p.ge_[y].test(x))
						throw PosetError("order is not antisymmetric");
					if (!p.ge_[y].is_subset_of(p.ge_[x]))
						throw PosetError("order is not transitive");
				}
			}
		}
		p.le_.assign(n, Bits(n));
		for (int x = 0; x < n; ++x)
			for (int y = p.ge_[x].find_first(); y != static_cast<int>(Bits::npos); y = p.ge_[x].find_next(y))
				p.le_[y].set(x);
		p.finish();
		return p;
	}

	int size() const { return static_cast<int>(ge_.size()); }
	bool leq(int x, int y) const { return ge_[x].test(y); }
	bool lt(int x, int y) const { return x != y && ge_[x].test(y); }
	const Bits& upset(int x) const { return ge_[x]; }
	const Bits& downset(int x) const { return le_[x]; }
	const std::vector<int>& up(int x) const { return up_[x]; }
	const std::vector<int>& down(int x) const { return down_[x]; }
	const std::vector<int>& linear_extension() const { return linear_; }
	int bottom() const { return bottom_; }
	int top() const { return top_; }
	bool bounded() const { return bottom_ >= 0 && top_ >= 0; }

	std::vector<std::pair<int, int>> covers() const
	{
		std::vector<std::pair<int, int>> out;
		for (int x = 0; x < size(); ++x)
			for (int y : up_[x])
				out.push_back({x, y});
		return out;
	}

	std::vector<std::string> names;  // optional payload strings
	std::vector<int> origin;         // index in the poset this one was cut from

private:
	void finish()
	{
		int n = size();
		up_.assign(n, {});
		down_.assign(n, {});
		// x ⋖ y iff x < y and no z with x < z < y
		for (int x = 0; x < n; ++x) {
			Bits strict = ge_[x];
			strict.reset(x);
			for (int y = strict.find_first(); y != static_cast<int>(Bits::npos); y = strict.find_next(y)) {
				Bits between = strict & le_[y];
				between.reset(y);
				if (between.none()) {
					up_[x].push_back(y);
					down_[y].push_back(x);
				}
			}
		}
		for (auto& d : down_)
			std::sort(d.begin(), d.end());
		std::vector<int> indeg(n);
		for (int x = 0; x < n; ++x)
			indeg[x] = static_cast<int>(down_[x].size());
		linear_.clear();
		std::vector<int> stack;
		for (int x = n - 1; x >= 0; --x)
			if (!indeg[x])
				stack.push_back(x);
		while (!stack.empty()) {
			int x = stack.back();
			stack.pop_back();
			linear_.push_back(x);
			for (auto it = up_[x].rbegin(); it != up_[x].rend(); ++it)
				if (--indeg[*it] == 0)
					stack.push_back(*it);
		}
		bottom_ = top_ = -1;
		for (int x = 0; x < n; ++x) {
			if (static_cast<int>(ge_[x].count()) == n)
				bottom_ = x;
			if (static_cast<int>(le_[x].count()) == n)
				top_ = x;
		}
		if (origin.size() != static_cast<std::size_t>(n)) {
			origin.resize(n);
			for (int x = 0; x < n; ++x)
				origin[x] = x;
		}
	}

	std::vector<Bits> ge_, le_;
	std::vector<std::vector<int>> up_, down_;
	std::vector<int> linear_;
	int bottom_ = -1, top_ = -1;
};

inline std::string element_name(const Poset& p, int x)
{
	return x < static_cast<int>(p.names.size()) ? p.names[x] : std::to_string(x);
}

// Induced subposet on the given elements, in the given order.
inline Poset subposet(const Poset& p, const std::vector<int>& elems)
{
	int m = static_cast<int>(elems.size());
	std::vector<Bits> above(m, Bits(m));
	for (int i = 0; i < m; ++i)
		for (int j = 0; j < m; ++j)
			if (p.leq(elems[i], elems[j]))
				above[i].set(j);
	Poset q = Poset::from_upsets(std::move(above), false);
	for (int i = 0; i < m; ++i) {
		q.origin[i] = elems[i];
		if (!p.names.empty())
			q.names.push_back(p.names[elems[i]]);
	}
	return q;
}

inline Poset interval(const Poset& p, int x, int y)
{
	if (!p.leq(x, y))
		throw PosetError("interval endpoints not comparable");
	std::vector<int> elems;
	for (int z = 0; z < p.size(); ++z)
		if (p.leq(x, z) && p.leq(z, y))
			elems.push_back(z);
	return subposet(p, elems);
}

inline Poset product(const Poset& p, const Poset& q)
{
	int a = p.size(), b = q.size();
	std::vector<Bits> above(a * b, Bits(a * b));
	for (int i = 0; i < a * b; ++i)
		for (int j = 0; j < a * b; ++j)
			if (p.leq(i / b, j / b) && q.leq(i % b, j % b))
				above[i].set(j);
	Poset r = Poset::from_upsets(std::move(above), false);
	if (!p.names.empty() || !q.names.empty())
		for (int i = 0; i < a * b; ++i)
			r.names.push_back("(" + element_name(p, i / b) + "," + element_name(q, i % b) + ")");
	return r;
}

// μ(x, z) for all z ≥ x.
inline std::vector<std::int64_t> mobius_from(const Poset& p, int x)
{
	std::vector<std::int64_t> mu(p.size(), 0);
	for (int z : p.linear_extension()) {
		if (!p.leq(x, z))
			continue;
		if (z == x) {
			mu[z] = 1;
			continue;
		}
		std::int64_t s = 0;
		const Bits& below = p.downset(z);
		for (int w = below.find_first(); w != static_cast<int>(Bits::npos); w = below.find_next(w))
			if (w != z && p.leq(x, w))
				s += mu[w];
		mu[z] = -s;
	}
	return mu;
}

inline std::int64_t mobius(const Poset& p, int x, int y) { return p.leq(x, y) ? mobius_from(p, x)[y] : 0; }

inline std::int64_t mobius_invariant(const Poset& p)
{
	if (!p.bounded())
		throw PosetError("poset is not bounded");
	return mobius(p, p.bottom(), p.top());
}

// Number of maximal chains from x to the top, by dynamic programming.
inline std::vector<double> chain_counts_to_top(const Poset& p)
{
	std::vector<double> cnt(p.size(), 0);
	const auto& lin = p.linear_extension();
	for (auto it = lin.rbegin(); it != lin.rend(); ++it) {
		int x = *it;
		if (p.up(x).empty())
			cnt[x] = 1;
		for (int y : p.up(x))
			cnt[x] += cnt[y];
	}
	return cnt;
}

// All maximal chains from minimal to maximal elements, children in index order.
inline std::vector<std::vector<int>> maximal_chains(const Poset& p, std::size_t limit = 5000000)
{
	auto cnt = chain_counts_to_top(p);
	double total = 0;
	for (int x = 0; x < p.size(); ++x)
		if (p.down(x).empty())
			total += cnt[x];
	if (total > static_cast<double>(limit))
		throw PosetError("too many maximal chains");
	std::vector<std::vector<int>> out;
	std::vector<int> chain;
	std::function<void(int)> dfs = [&](int x) {
		chain.push_back(x);
		if (p.up(x).empty())
			out.push_back(chain);
		for (int y : p.up(x))
			dfs(y);
		chain.pop_back();
	};
	for (int x = 0; x < p.size(); ++x)
		if (p.down(x).empty())
			dfs(x);
	return out;
}

inline std::set<int> chain_lengths(const Poset& p)
{
	std::vector<std::set<int>> len(p.size());
	const auto& lin = p.linear_extension();
	for (auto it = lin.rbegin(); it != lin.rend(); ++it) {
		int x = *it;
		if (p.up(x).empty())
			len[x].insert(0);
		for (int y : p.up(x))
			for (int l : len[y])
				len[x].insert(l + 1);
	}
	std::set<int> out;
	for (int x = 0; x < p.size(); ++x)
		if (p.down(x).empty())
			out.insert(len[x].begin(), len[x].end());
	return out;
}

inline int length(const Poset& p)
{
	auto ls = chain_lengths(p);
	return ls.empty() ? -1 : *ls.rbegin();
}

inline bool is_pure(const Poset& p) { return chain_lengths(p).size() <= 1; }

// Every interval semimodular: if a, b cover c and lie below y, some d covers both with d ≤ y.
inline bool is_totally_semimodular(const Poset& p)
{
	for (int c = 0; c < p.size(); ++c) {
		const auto& ups = p.up(c);
		for (std::size_t i = 0; i < ups.size(); ++i)
			for (std::size_t j = i + 1; j < ups.size(); ++j) {
				int a = ups[i], b = ups[j];
				Bits common = p.upset(a) & p.upset(b);
				if (common.none())
					continue;
				Bits joins(p.size());
				for (int d : p.up(a))
					if (std::binary_search(p.down(d).begin(), p.down(d).end(), b))
						joins.set(d);
				// every common upper bound must lie above some common cover
				for (int y = common.find_first(); y != static_cast<int>(Bits::npos); y = common.find_next(y))
					if ((joins & p.downset(y)).none())
						return false;
			}
	}
	return true;
}

inline SimplicialComplex order_complex(const Poset& p)
{
	SimplicialComplex k;
	k.num_vertices = p.size();
	k.facets = maximal_chains(p);
	for (auto& f : k.facets)
		std::sort(f.begin(), f.end());
	if (p.size() == 0)
		k.facets.push_back({});
	return k;
}

// Order complex of the open interval (0̂, 1̂); vertices keep the host indices.
inline SimplicialComplex proper_part_complex(const Poset& p)
{
	if (!p.bounded())
		throw PosetError("poset is not bounded");
	if (p.bottom() == p.top())
		throw PosetError("proper part needs length at least one");
	SimplicialComplex k;
	k.num_vertices = p.size();
	for (auto chain : maximal_chains(p)) {
		chain.erase(chain.begin());
		chain.pop_back();
		std::sort(chain.begin(), chain.end());
		k.facets.push_back(std::move(chain));
	}
	return k;
}

inline std::string to_dot(const Poset& p)
{
	std::ostringstream out;
	out << "digraph hasse {\n  rankdir=BT;\n";
	for (int x = 0; x < p.size(); ++x)
		out << "  n" << x << " [label=\"" << element_name(p, x) << "\"];\n";
	for (auto [x, y] : p.covers())
		out << "  n" << x << " -> n" << y << ";\n";
	out << "}\n";
	return out.str();
}

}  // namespace evenshell

#endif
