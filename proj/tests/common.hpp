#ifndef EVENSHELL_TESTS_COMMON_HPP
#define EVENSHELL_TESTS_COMMON_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "evenshell/multigraph.hpp"

namespace fixtures {

inline std::string read_text(const std::string& name)
{
	std::ifstream in(std::string(EVENSHELL_DATA_DIR) + "/" + name);
	if (!in)
		throw std::runtime_error("missing fixture " + name);
	std::stringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

inline evenshell::Multigraph graph(const std::string& name) { return evenshell::parse_graph(read_text(name)); }

}  // namespace fixtures

#endif
