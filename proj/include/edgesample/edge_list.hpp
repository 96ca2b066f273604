#ifndef EDGESAMPLE_EDGE_LIST_HPP
#define EDGESAMPLE_EDGE_LIST_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "edgesample/graph.hpp"

namespace edgesample {

// One edge per line as two whitespace-separated labels. Lines starting with
// '#' (after leading whitespace) and blank lines are skipped; columns past
// the second (weights, timestamps) are ignored. A line with a single token is
// a ParseError that names the line number.
Graph read_edge_list(std::istream& in, const std::string& source_name = "<stream>");
Graph read_edge_list(const std::filesystem::path& path);

void write_edge_list(const Graph& g, std::ostream& out);
void write_edge_list(const Graph& g, const std::filesystem::path& path);

// Metadata carried in a "# p=<p> removed_nodes=<n>" comment line of a sampled
// edge list.
struct SampleHeader {
  std::optional<double> p;
  std::optional<std::size_t> removed_nodes;
};

SampleHeader read_sample_header(const std::filesystem::path& path);

}  // namespace edgesample

#endif  // EDGESAMPLE_EDGE_LIST_HPP
