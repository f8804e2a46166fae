#include "approxsym/text_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include "approxsym/error.hpp"

namespace approxsym {
namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<long long> parse_ints(std::string_view line, const char* what) {
  std::vector<long long> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), v);
    if (ec != std::errc() ||
        (ptr != line.data() + line.size() && *ptr != ' ' && *ptr != '\t')) {
      throw ParseError(std::string("non-integer token in ") + what + ": '" + std::string(line) + "'");
    }
    out.push_back(v);
    i = static_cast<std::size_t>(ptr - line.data());
  }
  return out;
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

}  // namespace

std::string format_graph(const Graph& g) {
  std::string out = std::to_string(g.n()) + " " + std::to_string(g.edge_count()) + "\n";
  for (const auto& [i, j] : g.edges()) {
    out += std::to_string(i);
    out += ' ';
    out += std::to_string(j);
    out += '\n';
  }
  return out;
}

Graph parse_graph(const std::string& text) {
  const auto lines = split_lines(text);
  std::size_t li = 0;
  while (li < lines.size() && is_blank(lines[li])) ++li;
  if (li >= lines.size()) throw ParseError("graph file is empty");
  const auto header = parse_ints(lines[li++], "graph header");
  if (header.size() != 2 || header[0] < 0 || header[1] < 0) {
    throw ParseError("graph header must be 'n m'");
  }
  const int n = static_cast<int>(header[0]);
  const long long m = header[1];
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (; li < lines.size(); ++li) {
    if (is_blank(lines[li])) continue;
    const auto e = parse_ints(lines[li], "edge line");
    if (e.size() != 2) throw ParseError("edge line must hold two node ids");
    if (e[0] < 0 || e[1] < 0 || e[0] >= n || e[1] >= n) {
      throw ParseError("edge endpoint out of range: " + std::string(lines[li]));
    }
    if (e[0] >= e[1]) throw ParseError("edge must satisfy i < j: " + std::string(lines[li]));
    const Edge edge{static_cast<int>(e[0]), static_cast<int>(e[1])};
    if (!edges.empty() && !(edges.back() < edge)) {
      throw ParseError("edges must be listed in strictly increasing lexicographic order");
    }
    edges.push_back(edge);
  }
  if (static_cast<long long>(edges.size()) != m) {
    throw ParseError("graph header declares " + std::to_string(m) + " edges but " +
                     std::to_string(edges.size()) + " were listed");
  }
  return Graph::from_edges(n, edges);
}

std::string format_permutation(const Permutation& p) {
  std::string out;
  for (int i = 0; i < p.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(p[i]);
  }
  out += '\n';
  return out;
}

Permutation parse_permutation(const std::string& text) {
  std::vector<int> img;
  int nonblank = 0;
  for (const auto line : split_lines(text)) {
    if (is_blank(line)) continue;
    if (++nonblank > 1) throw ParseError("permutation must be a single line");
    for (long long v : parse_ints(line, "permutation")) {
      if (v < INT32_MIN || v > INT32_MAX) throw ParseError("permutation image out of range");
      img.push_back(static_cast<int>(v));
    }
  }
  if (img.empty()) throw ParseError("permutation file is empty");
  try {
    return Permutation::from_images(std::move(img));
  } catch (const InvalidInput& e) {
    throw ParseError(e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Graph read_graph(const std::filesystem::path& path) { return parse_graph(read_text_file(path)); }

void write_graph(const std::filesystem::path& path, const Graph& g) {
  write_text_file(path, format_graph(g));
}

Permutation read_permutation(const std::filesystem::path& path) {
  return parse_permutation(read_text_file(path));
}

void write_permutation(const std::filesystem::path& path, const Permutation& p) {
  write_text_file(path, format_permutation(p));
}

}  // namespace approxsym
