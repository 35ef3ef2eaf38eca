#ifndef EVENSHELL_HOMOLOGY_HPP
#define EVENSHELL_HOMOLOGY_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace evenshell {

using Int = boost::multiprecision::cpp_int;

// Facets given as sorted vertex lists. No facets is the void complex;
// a single empty facet is the complex {∅}.
struct SimplicialComplex {
	int num_vertices = 0;
	std::vector<std::vector<int>> facets;

	int dimension() const
	{
		int d = -2;
		for (const auto& f : facets)
			d = std::max(d, static_cast<int>(f.size()) - 1);
		return d;
	}
	bool is_pure() const
	{
		for (const auto& f : facets)
			if (f.size() != facets.front().size())
				return false;
		return true;
	}
};

struct HomologyError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

// Sorts facets and vertex lists, drops duplicates and non-maximal faces.
inline SimplicialComplex normalized(SimplicialComplex k)
{
	for (auto& f : k.facets) {
		std::sort(f.begin(), f.end());
		f.erase(std::unique(f.begin(), f.end()), f.end());
		for (int v : f)
			k.num_vertices = std::max(k.num_vertices, v + 1);
	}
	std::sort(k.facets.begin(), k.facets.end(),
	          [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() > b.size() : a < b; });
	k.facets.erase(std::unique(k.facets.begin(), k.facets.end()), k.facets.end());
	std::vector<std::vector<int>> keep;
	for (auto& f : k.facets) {
		bool contained = false;
		for (const auto& g : keep)
			if (g.size() > f.size() && std::includes(g.begin(), g.end(), f.begin(), f.end())) {
				contained = true;
				break;
			}
		if (!contained)
			keep.push_back(f);
	}
	std::sort(keep.begin(), keep.end());
	k.facets = std::move(keep);
	return k;
}

// faces[d + 1] lists the d-dimensional faces, sorted; faces[0] is {∅} unless void.
inline std::vector<std::vector<std::vector<int>>> all_faces(const SimplicialComplex& k, std::size_t budget = 2000000)
{
	std::vector<std::vector<std::vector<int>>> faces(std::max(0, k.dimension() + 2));
	std::size_t total = 0;
	for (auto f : k.facets) {
		std::sort(f.begin(), f.end());
		if (f.size() > 30)
			throw HomologyError("facet too large");
		std::uint32_t full = (1u << f.size());
		total += full;
		if (total > 8 * budget)
			throw HomologyError("complex exceeds face budget");
		for (std::uint32_t s = 0; s < full; ++s) {
			std::vector<int> face;
			for (std::size_t i = 0; i < f.size(); ++i)
				if ((s >> i) & 1)
					face.push_back(f[i]);
			faces[face.size()].push_back(std::move(face));
		}
	}
	std::size_t distinct = 0;
	for (auto& level : faces) {
		std::sort(level.begin(), level.end());
		level.erase(std::unique(level.begin(), level.end()), level.end());
		distinct += level.size();
	}
	if (distinct > budget)
		throw HomologyError("complex exceeds face budget");
	return faces;
}

inline std::vector<std::int64_t> f_vector(const SimplicialComplex& k)
{
	std::vector<std::int64_t> out;
	for (const auto& level : all_faces(k))
		out.push_back(static_cast<std::int64_t>(level.size()));
	return out;
}

// Column-sparse integer matrix.
struct SparseMatrix {
	int rows = 0, cols = 0;
	std::vector<std::vector<std::pair<int, Int>>> col;  // sorted by row

	std::vector<std::vector<Int>> dense() const
	{
		std::vector<std::vector<Int>> m(rows, std::vector<Int>(cols));
		for (int c = 0; c < cols; ++c)
			for (const auto& [r, v] : col[c])
				m[r][c] = v;
		return m;
	}
};

// ∂_d from d-faces (columns) to (d-1)-faces (rows); d = 0 maps to the empty face.
inline SparseMatrix boundary_matrix(const std::vector<std::vector<std::vector<int>>>& faces, int d)
{
	SparseMatrix m;
	if (d < 0 || d + 1 >= static_cast<int>(faces.size()))
		return m;
	const auto& hi = faces[d + 1];
	const auto& lo = faces[d];
	m.rows = static_cast<int>(lo.size());
	m.cols = static_cast<int>(hi.size());
	m.col.resize(m.cols);
	for (int c = 0; c < m.cols; ++c) {
		const auto& f = hi[c];
		for (std::size_t i = 0; i < f.size(); ++i) {
			std::vector<int> sub;
			sub.reserve(f.size() - 1);
			for (std::size_t j = 0; j < f.size(); ++j)
				if (j != i)
					sub.push_back(f[j]);
			int r = static_cast<int>(std::lower_bound(lo.begin(), lo.end(), sub) - lo.begin());
			m.col[c].push_back({r, (i % 2) ? Int(-1) : Int(1)});
		}
		std::sort(m.col[c].begin(), m.col[c].end(), [](const auto& a, const auto& b) { return a.first < b.first; });
	}
	return m;
}

inline SparseMatrix boundary_matrix(const SimplicialComplex& k, int d)
{
	return boundary_matrix(all_faces(k), d);
}

struct SmithResult {
	int rank = 0;
	std::vector<Int> torsion;  // invariant factors > 1, each dividing the next
};

namespace detail {

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

// Smith form of a dense matrix; returns the nonzero diagonal.
inline std::vector<Int> dense_smith_diagonal(std::vector<std::vector<Int>> a)
{
	int rows = static_cast<int>(a.size());
	int cols = rows ? static_cast<int>(a[0].size()) : 0;
	std::vector<Int> diag;
	int t = 0;
	while (t < rows && t < cols) {
		// smallest nonzero entry in the remaining block
		int pr = -1, pc = -1;
		Int best;
		for (int r = t; r < rows; ++r)
			for (int c = t; c < cols; ++c)
				if (a[r][c] != 0 && (pr < 0 || abs_int(a[r][c]) < best)) {
					best = abs_int(a[r][c]);
					pr = r;
					pc = c;
				}
		if (pr < 0)
			break;
		std::swap(a[t], a[pr]);
		for (int r = 0; r < rows; ++r)
			std::swap(a[r][t], a[r][pc]);
		bool clean = false;
		while (!clean) {
			clean = true;
			for (int r = t + 1; r < rows; ++r) {
				if (a[r][t] == 0)
					continue;
				Int q = a[r][t] / a[t][t];
				for (int c = t; c < cols; ++c)
					a[r][c] -= q * a[t][c];
				if (a[r][t] != 0) {
					std::swap(a[t], a[r]);
					clean = false;
				}
			}
			for (int c = t + 1; c < cols; ++c) {
				if (a[t][c] == 0)
					continue;
				Int q = a[t][c] / a[t][t];
				for (int r = t; r < rows; ++r)
					a[r][c] -= q * a[r][t];
				if (a[t][c] != 0) {
					for (int r = 0; r < rows; ++r)
						std::swap(a[r][t], a[r][c]);
					clean = false;
				}
			}
			if (clean) {
				// pivot must divide the rest of the block
				for (int r = t + 1; r < rows && clean; ++r)
					for (int c = t + 1; c < cols; ++c)
						if (a[r][c] % a[t][t] != 0) {
							for (int cc = t; cc < cols; ++cc)
								a[t][cc] += a[r][cc];
							clean = false;
							break;
						}
			}
		}
		diag.push_back(abs_int(a[t][t]));
		++t;
	}
	// normalize to a divisibility chain
	for (std::size_t i = 0; i < diag.size(); ++i)
		for (std::size_t j = i + 1; j < diag.size(); ++j) {
			Int g = boost::multiprecision::gcd(diag[i], diag[j]);
			Int l = diag[i] / g * diag[j];
			diag[i] = g;
			diag[j] = l;
		}
	return diag;
}

}  // namespace detail

// Unit pivots are eliminated sparsely; the remainder goes through dense Smith form.
inline SmithResult smith_invariants(SparseMatrix m)
{
	using Col = std::vector<std::pair<int, Int>>;
	SmithResult res;
	std::vector<std::unordered_set<int>> row_cols(m.rows);
	for (int c = 0; c < m.cols; ++c)
		for (const auto& [r, v] : m.col[c])
			row_cols[r].insert(c);
	std::vector<char> col_dead(m.cols, 0), row_dead(m.rows, 0);

	auto axpy = [&](int j, const Int& f, int c) {
		// col[j] -= f * col[c]
		Col out;
		const Col& a = m.col[j];
		const Col& b = m.col[c];
		std::size_t i = 0, k = 0;
		while (i < a.size() || k < b.size()) {
			if (k == b.size() || (i < a.size() && a[i].first < b[k].first)) {
				out.push_back(a[i++]);
			} else if (i == a.size() || b[k].first < a[i].first) {
				Int v = -f * b[k].second;
				row_cols[b[k].first].insert(j);
				out.push_back({b[k].first, v});
				++k;
			} else {
				Int v = a[i].second - f * b[k].second;
				if (v == 0)
					row_cols[a[i].first].erase(j);
				else
					out.push_back({a[i].first, v});
				++i;
				++k;
			}
		}
		m.col[j] = std::move(out);
	};

	bool progress = true;
	while (progress) {
		progress = false;
		for (int c = 0; c < m.cols; ++c) {
			if (col_dead[c] || m.col[c].empty())
				continue;
			int pr = -1;
			std::size_t best = 0;
			for (const auto& [r, v] : m.col[c])
				if ((v == 1 || v == -1) && (pr < 0 || row_cols[r].size() < best)) {
					pr = r;
					best = row_cols[r].size();
				}
			if (pr < 0)
				continue;
			Int pv = 0;
			for (const auto& [r, v] : m.col[c])
				if (r == pr)
					pv = v;
			std::vector<int> others(row_cols[pr].begin(), row_cols[pr].end());
			for (int j : others) {
				if (j == c)
					continue;
				Int f = 0;
				for (const auto& [r, v] : m.col[j])
					if (r == pr) {
						f = v * pv;  // pv is ±1, so v / pv = v * pv
						break;
					}
				axpy(j, f, c);
			}
			for (const auto& [r, v] : m.col[c])
				row_cols[r].erase(c);
			m.col[c].clear();
			col_dead[c] = 1;
			row_dead[pr] = 1;
			++res.rank;
			progress = true;
		}
	}
	std::vector<int> live_cols, live_rows;
	std::vector<int> row_index(m.rows, -1);
	for (int c = 0; c < m.cols; ++c)
		if (!col_dead[c] && !m.col[c].empty())
			live_cols.push_back(c);
	for (int c : live_cols)
		for (const auto& [r, v] : m.col[c])
			if (row_index[r] < 0) {
				row_index[r] = static_cast<int>(live_rows.size());
				live_rows.push_back(r);
			}
	if (!live_cols.empty()) {
		if (live_rows.size() * live_cols.size() > 4000000)
			throw HomologyError("dense Smith remainder too large");
		std::vector<std::vector<Int>> a(live_rows.size(), std::vector<Int>(live_cols.size()));
		for (std::size_t j = 0; j < live_cols.size(); ++j)
			for (const auto& [r, v] : m.col[live_cols[j]])
				a[row_index[r]][j] = v;
		for (const Int& d : detail::dense_smith_diagonal(std::move(a))) {
			++res.rank;
			if (d > 1)
				res.torsion.push_back(d);
		}
	}
	std::sort(res.torsion.begin(), res.torsion.end());
	return res;
}

struct HomologyGroup {
	std::int64_t rank = 0;
	std::vector<Int> torsion;
};

// Reduced homology indexed by dimension; groups[d + 1] is H̃_d, d ≥ -1.
struct HomologySummary {
	std::vector<HomologyGroup> groups;

	const HomologyGroup& at(int d) const
	{
		static const HomologyGroup zero;
		return (d + 1 >= 0 && d + 1 < static_cast<int>(groups.size())) ? groups[d + 1] : zero;
	}
	std::int64_t betti(int d) const { return at(d).rank; }
	bool torsion_free() const
	{
		for (const auto& g : groups)
			if (!g.torsion.empty())
				return false;
		return true;
	}
};

inline HomologySummary integral_reduced_homology(const SimplicialComplex& k, std::size_t budget = 2000000)
{
	HomologySummary hs;
	auto faces = all_faces(k, budget);
	int top = static_cast<int>(faces.size()) - 2;  // top dimension
	if (top < -1)
		return hs;  // void complex: all groups zero
	std::vector<SmithResult> bd(faces.size() + 1);
	for (int d = 0; d <= top; ++d)
		bd[d + 1] = smith_invariants(boundary_matrix(faces, d));
	hs.groups.resize(top + 2);
	for (int d = -1; d <= top; ++d) {
		std::int64_t cycles = static_cast<std::int64_t>(faces[d + 1].size()) - (d >= 0 ? bd[d + 1].rank : 0);
		std::int64_t boundaries = d + 1 <= top ? bd[d + 2].rank : 0;
		hs.groups[d + 1].rank = cycles - boundaries;
		if (d + 1 <= top)
			hs.groups[d + 1].torsion = bd[d + 2].torsion;
	}
	return hs;
}

// Sphere dimensions of a torsion-free summary, or none when torsion is present.
inline std::optional<std::vector<int>> wedge_summary(const HomologySummary& hs)
{
	if (!hs.torsion_free())
		return std::nullopt;
	std::vector<int> dims;
	for (int d = -1; d + 1 < static_cast<int>(hs.groups.size()); ++d)
		for (std::int64_t i = 0; i < hs.betti(d); ++i)
			dims.push_back(d);
	return dims;
}

inline std::int64_t reduced_euler_characteristic(const SimplicialComplex& k)
{
	std::int64_t chi = 0;
	auto f = f_vector(k);
	for (std::size_t i = 0; i < f.size(); ++i)
		chi += (i % 2 ? 1 : -1) * f[i];  // f[0] is the empty face, dimension -1
	return chi;
}

}  // namespace evenshell

#endif
