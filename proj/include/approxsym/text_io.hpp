#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "approxsym/graph.hpp"

namespace approxsym {

// Graph text format: first line "n m", then m lines "i j" (0-based, i < j,
// lexicographic order), LF line endings.
std::string format_graph(const Graph& g);
Graph parse_graph(const std::string& text);

// Permutation text format: one line with the n images separated by spaces.
std::string format_permutation(const Permutation& p);
Permutation parse_permutation(const std::string& text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

Graph read_graph(const std::filesystem::path& path);
void write_graph(const std::filesystem::path& path, const Graph& g);
Permutation read_permutation(const std::filesystem::path& path);
void write_permutation(const std::filesystem::path& path, const Permutation& p);

}  // namespace approxsym
