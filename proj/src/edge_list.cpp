#include "edgesample/edge_list.hpp"

#include <fstream>
#include <sstream>

#include "edgesample/errors.hpp"

namespace edgesample {

Graph read_edge_list(std::istream& in, const std::string& source_name) {
  GraphBuilder builder;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string a;
    std::string b;
    if (!(fields >> a >> b)) {
      throw ParseError(source_name + ":" + std::to_string(line_no) + ": expected two node labels, got '" +
                       line + "'");
    }
    builder.add_edge(a, b);
  }
  if (in.bad()) throw IoError(source_name + ": read failure");
  return std::move(builder).build();
}

Graph read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_edge_list(in, path.string());
}

void write_edge_list(const Graph& g, std::ostream& out) {
  for (const Edge& e : g.edges()) out << g.label(e.u) << ' ' << g.label(e.v) << '\n';
}

void write_edge_list(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_edge_list(g, out);
  if (!out) throw IoError("write failed for " + path.string());
}

SampleHeader read_sample_header(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  SampleHeader header;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] != '#') break;
    std::istringstream fields(line.substr(first + 1));
    std::string token;
    while (fields >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos) continue;
      const auto key = token.substr(0, eq);
      const auto value = token.substr(eq + 1);
      try {
        if (key == "p") header.p = std::stod(value);
        if (key == "removed_nodes") header.removed_nodes = std::stoull(value);
      } catch (const std::exception&) {
        throw ParseError(path.string() + ": bad header value '" + token + "'");
      }
    }
  }
  return header;
}

}  // namespace edgesample
