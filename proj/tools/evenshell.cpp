#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "evenshell/classify.hpp"
#include "evenshell/evenposet.hpp"
#include "evenshell/family.hpp"
#include "evenshell/homology.hpp"
#include "evenshell/multigraph.hpp"
#include "evenshell/poset.hpp"
#include "evenshell/shellability.hpp"
#include "evenshell/toric.hpp"

using namespace evenshell;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

struct Options {
	std::string input;
	std::string a;
	bool a_given = false;
	std::string format = "json";
	std::int64_t budget = 10000000;
	int jobs = 1;
	std::string out;
};

Multigraph load(const Options& o)
{
	std::ifstream in(o.input);
	if (!in)
		throw UsageError("cannot read " + o.input);
	std::stringstream ss;
	ss << in.rdbuf();
	return parse_graph(ss.str());
}

EvenPoset load_poset(const Multigraph& g, const Options& o)
{
	if (!o.a_given)
		throw UsageError("--A is required");
	Mask a = parse_set(g, o.a);
	auto ep = even_poset(g, a);
	if (!ep)
		throw UsageError("set " + set_to_string(g, a) + " is not admissible");
	return *ep;
}

std::string to_text(const Int& x)
{
	return x.str();
}

json int_json(const Int& x)
{
	if (x <= Int(std::numeric_limits<std::int64_t>::max()))
		return static_cast<std::int64_t>(x);
	return to_text(x);
}

json homology_json(const HomologySummary& hs)
{
	json betti = json::object(), torsion = json::object();
	for (int d = -1; d + 1 < static_cast<int>(hs.groups.size()); ++d) {
		if (hs.betti(d))
			betti[std::to_string(d)] = hs.betti(d);
		if (!hs.at(d).torsion.empty()) {
			json t = json::array();
			for (const Int& q : hs.at(d).torsion)
				t.push_back(int_json(q));
			torsion[std::to_string(d)] = t;
		}
	}
	json out{{"betti", betti}, {"torsion", torsion}};
	auto w = wedge_summary(hs);
	out["wedge_of_spheres"] = w ? json(*w) : json(nullptr);
	return out;
}

std::string element_list(const EvenPoset& ep, const std::vector<int>& xs)
{
	std::string s;
	for (std::size_t t = 0; t < xs.size(); ++t)
		s += (t ? " " : "") + ep.name(xs[t]);
	return s;
}

// Labeling for falling chains: the explicit ordering on canonical family
// members, otherwise a searched recursive atom ordering.
struct Labeled {
	EvenPoset ep;
	AtomOrdering ordering;
	std::string method;
	bool found = false;
};

Labeled labeled_poset(const Multigraph& g, const EvenPoset& ep, std::int64_t budget)
{
	Labeled out{ep, {}, "", false};
	FamilyTag tag = family_of(g);
	if (tag.kind != FamilyTag::None && tag.kind != FamilyTag::Simple) {
		try {
			canonical_params(ep);
			out.ordering = explicit_atom_ordering(ep);
			out.method = "explicit";
			out.found = verify_recursive_atom_ordering(ep.poset, out.ordering).ok;
			if (out.found)
				return out;
		} catch (const GraphError&) {
			// not written in canonical labels; fall through to the search
		}
	}
	RaoSearch rs = find_recursive_atom_ordering(ep.poset, budget);
	if (rs.status == RaoSearch::BudgetExceeded)
		throw BudgetExceeded("recursive atom ordering search exceeded the budget");
	out.method = "search";
	out.found = rs.status == RaoSearch::Found;
	out.ordering = std::move(rs.ordering);
	return out;
}

std::string csv_table4()
{
	std::ostringstream out;
	out << "i";
	for (int n = 2; n <= 15; ++n)
		out << "," << n;
	out << "\n";
	std::vector<BettiVector> cols;
	for (int n = 2; n <= 15; ++n)
		cols.push_back(betti_tilde_path2(n));
	for (int i = 0; i <= 8; ++i) {
		out << i;
		for (const auto& c : cols)
			out << "," << (i < static_cast<int>(c.size()) ? c[i] : Int(0));
		out << "\n";
	}
	return out.str();
}

std::string run_classify(const Options& o)
{
	Multigraph g = load(o);
	json comps = json::array();
	for (const Multigraph& c : components(g))
		comps.push_back(to_string(family_of(c)));
	json out{{"in_g_star", in_g_star(g)}, {"components", comps}};
	if (!in_g_star(g)) {
		WitnessSearch ws = non_shellable_witness(g, 14, o.budget);
		if (ws.status == WitnessSearch::BudgetExceeded)
			throw BudgetExceeded("witness search exceeded the budget");
		if (ws.status == WitnessSearch::Found) {
			const Witness& w = ws.witness;
			out["witness"] = {{"graph", format_graph(w.pair.pi.graph)},
			                  {"A", set_to_string(w.pair.pi.graph, w.pair.admissible)},
			                  {"interval", {w.poset.name(w.x), w.poset.name(w.y)}}};
		} else {
			out["witness"] = nullptr;
		}
	}
	return out.dump(2) + "\n";
}

std::string run_poset(const Options& o)
{
	Multigraph g = load(o);
	EvenPoset ep = load_poset(g, o);
	if (o.format == "dot")
		return to_dot(ep.poset);
	if (o.format == "csv") {
		std::string s = "element\n";
		for (int x = 0; x < ep.poset.size(); ++x)
			s += ep.name(x) + "\n";
		return s;
	}
	json elems = json::array(), covers = json::array();
	for (int x = 0; x < ep.poset.size(); ++x)
		elems.push_back(ep.name(x));
	for (auto [x, y] : ep.poset.covers())
		covers.push_back({ep.name(x), ep.name(y)});
	json out{{"A", set_to_string(g, ep.admissible)}, {"size", ep.poset.size()}, {"elements", elems}, {"covers", covers}};
	out["chain_lengths"] = chain_lengths(ep.poset);
	return out.dump(2) + "\n";
}

std::string run_shell(const Options& o)
{
	Multigraph g = load(o);
	EvenPoset ep = load_poset(g, o);
	PosetShellReport rep = shell_poset(ep.poset, 14, o.budget);
	if (rep.verdict == PosetShellReport::Unknown && rep.method == "budget-exceeded")
		throw BudgetExceeded("shellability search exceeded the budget");
	json out;
	out["shellable"] = rep.verdict == PosetShellReport::Shellable      ? json(true)
	                   : rep.verdict == PosetShellReport::NotShellable ? json(false)
	                                                                   : json("unknown");
	out["method"] = rep.method;
	json cert;
	if (!rep.shelling.empty()) {
		json facets = json::array();
		for (const auto& f : rep.shelling) {
			std::string s;
			for (std::size_t t = 0; t < f.size(); ++t)
				s += (t ? "<" : "") + ep.name(f[t]);
			facets.push_back(s);
		}
		cert["shelling"] = facets;
	} else if (rep.verdict == PosetShellReport::Shellable) {
		json ord = json::object();
		for (int x = 0; x < ep.poset.size(); ++x) {
			const auto& atoms = rep.ordering.at(x, {});
			if (!atoms.empty())
				ord[ep.name(x)] = element_list(ep, atoms);
		}
		cert["atom_ordering"] = ord;
	}
	if (rep.witness_x >= 0)
		cert["non_shellable_interval"] = {ep.name(rep.witness_x), ep.name(rep.witness_y)};
	out["certificate"] = cert;
	return out.dump(2) + "\n";
}

std::string run_falling(const Options& o)
{
	Multigraph g = load(o);
	EvenPoset ep = load_poset(g, o);
	Labeled lp = labeled_poset(g, ep, o.budget);
	json out;
	out["method"] = lp.method;
	if (!lp.found) {
		out["cl_shellable"] = false;
		out["falling_chains"] = json::array();
		return out.dump(2) + "\n";
	}
	auto lab = cl_labeling_from_rao(ep.poset, lp.ordering);
	auto chains = falling_chains(ep.poset, lab);
	if (o.format == "csv") {
		std::string s = "length,chain\n";
		for (const auto& c : chains)
			s += std::to_string(c.size() - 1) + "," + chain_to_string(ep, c) + "\n";
		return s;
	}
	json list = json::array();
	for (const auto& c : chains)
		list.push_back(chain_to_string(ep, c));
	json counts = json::object();
	for (auto [len, cnt] : counts_by_length(chains))
		counts[std::to_string(len)] = cnt;
	out["cl_shellable"] = true;
	out["falling_chains"] = list;
	out["counts_by_length"] = counts;
	return out.dump(2) + "\n";
}

std::string run_homology(const Options& o)
{
	Multigraph g = load(o);
	EvenPoset ep = load_poset(g, o);
	auto hs = integral_reduced_homology(proper_part_complex(ep.poset), static_cast<std::size_t>(o.budget));
	json out = homology_json(hs);
	out["mobius"] = mobius_invariant(ep.poset);
	return out.dump(2) + "\n";
}

std::string run_betti(const Options& o)
{
	Multigraph g = load(o);
	BettiVector b;
	try {
		b = trimmed(betti_general(g, static_cast<std::size_t>(o.budget), o.jobs));
	} catch (const ToricError& e) {
		throw UsageError(e.what());
	}
	if (o.format == "csv") {
		std::string s = "i,betti\n";
		for (std::size_t i = 0; i < b.size(); ++i)
			s += std::to_string(i) + "," + to_text(b[i]) + "\n";
		return s;
	}
	json betti = json::array();
	for (const Int& x : b)
		betti.push_back(int_json(x));
	json out{{"betti", betti}};
	if (components(g).size() == 1) {
		json coh = json::array();
		for (const auto& d : integral_cohomology(g))
			coh.push_back({{"degree", d.degree},
			               {"free_rank", int_json(d.free_rank)},
			               {"two_torsion", int_json(d.two_torsion)},
			               {"homology_two_torsion", int_json(d.homology_two_torsion)}});
		out["cohomology"] = coh;
	}
	return out.dump(2) + "\n";
}

std::string run_table4(const Options& o)
{
	if (o.format == "csv")
		return csv_table4();
	json out = json::object();
	for (int n = 2; n <= 15; ++n) {
		json col = json::array();
		auto b = betti_tilde_path2(n);
		for (int i = 0; i <= 8; ++i)
			col.push_back(int_json(i < static_cast<int>(b.size()) ? b[i] : Int(0)));
		out[std::to_string(n)] = col;
	}
	return out.dump(2) + "\n";
}

std::string run_witness(const Options& o)
{
	Multigraph g = load(o);
	WitnessSearch ws = non_shellable_witness(g, 14, o.budget);
	if (ws.status == WitnessSearch::BudgetExceeded)
		throw BudgetExceeded("witness search exceeded the budget");
	json out{{"found", ws.status == WitnessSearch::Found},
	         {"pairs_checked", ws.pairs_checked},
	         {"skipped_intervals", ws.skipped_intervals}};
	if (ws.status == WitnessSearch::Found) {
		const Witness& w = ws.witness;
		out["graph"] = format_graph(w.pair.pi.graph);
		out["A"] = set_to_string(w.pair.pi.graph, w.pair.admissible);
		out["interval"] = {w.poset.name(w.x), w.poset.name(w.y)};
	}
	return out.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Even posets of multigraphs: shellability, falling chains and toric Betti numbers"};
	app.require_subcommand(1);
	Options o;
	std::map<std::string, std::string (*)(const Options&)> handlers{
		{"classify", run_classify}, {"poset", run_poset},     {"shell", run_shell},     {"falling", run_falling},
		{"homology", run_homology}, {"betti", run_betti},     {"table4", run_table4},   {"witness", run_witness},
	};
	std::map<std::string, std::string> help{
		{"classify", "family of each component, membership in the shellable class, witness if outside"},
		{"poset", "elements and covers of the even poset"},
		{"shell", "shellability verdict with certificate"},
		{"falling", "falling chains under a recursive atom ordering"},
		{"homology", "integral reduced homology of the proper part"},
		{"betti", "Betti numbers of the real toric manifold"},
		{"table4", "Betti numbers for paths with a double edge, n = 2..15"},
		{"witness", "search proper PI-graphs for a non-shellable interval"},
	};
	for (auto& [name, fn] : handlers) {
		CLI::App* sub = app.add_subcommand(name, help[name]);
		if (name != "table4")
			sub->add_option("graph", o.input, "graph file")->required();
		if (name == "poset" || name == "shell" || name == "falling" || name == "homology")
			sub->add_option("--A", o.a, "admissible set as whitespace-separated tokens");
		sub->add_option("--format", o.format, "json, csv or dot")->check(CLI::IsMember({"json", "csv", "dot"}));
		sub->add_option("--budget", o.budget, "node budget for searches")->check(CLI::PositiveNumber);
		sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
		sub->add_option("--out", o.out, "write the report to this path");
	}
	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp& e) {
		return app.exit(e);
	} catch (const CLI::ParseError& e) {
		app.exit(e);
		return 2;
	}
	std::string name = app.get_subcommands().front()->get_name();
	CLI::App* sub = app.get_subcommands().front();
	o.a_given = sub->get_option_no_throw("--A") != nullptr && sub->count("--A") > 0;
	std::string report;
	try {
		report = handlers.at(name)(o);
	} catch (const BudgetExceeded& e) {
		std::cerr << "budget exceeded: " << e.what() << "\n";
		return 3;
	} catch (const HomologyError& e) {
		std::cerr << "budget exceeded: " << e.what() << "\n";
		return 3;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	}
	if (o.out.empty()) {
		std::cout << report;
	} else {
		std::ofstream f(o.out);
		if (!f) {
			std::cerr << "error: cannot write " << o.out << "\n";
			return 2;
		}
		f << report;
	}
	return 0;
}
