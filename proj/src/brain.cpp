#include "approxsym/brain.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string_view>
#include <vector>

#include "approxsym/error.hpp"
#include "approxsym/text_io.hpp"

namespace approxsym {

WeightedMatrix WeightedMatrix::from_matrix(Eigen::MatrixXd w) {
  if (w.rows() != w.cols()) throw InvalidInput("connectivity matrix must be square");
  const int n = static_cast<int>(w.rows());
  if (w.size() > 0 && !w.allFinite()) throw InvalidInput("connectivity matrix has non-finite weights");
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double a = w(i, j);
      const double b = w(j, i);
      if (a < 0.0 || b < 0.0) throw InvalidInput("connectivity weights must be nonnegative");
      const double scale = std::max(std::abs(a), std::abs(b));
      if (scale > 0.0 && std::abs(a - b) > kMaxRelativeAsymmetry * scale) {
        throw InvalidInput("connectivity matrix is asymmetric at (" + std::to_string(i) + ", " +
                           std::to_string(j) + ")");
      }
      const double avg = 0.5 * (a + b);
      w(i, j) = avg;
      w(j, i) = avg;
    }
    w(i, i) = 0.0;
  }
  return WeightedMatrix(std::move(w));
}

WeightedMatrix parse_matrix(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::size_t start = 0;
  int line_no = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + start, end - start);
    ++line_no;
    start = end + 1;
    std::vector<double> row;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == ',' || line[i] == '\r')) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != ',' && line[j] != '\r') ++j;
      const std::string_view tok = line.substr(i, j - i);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError("non-numeric cell '" + std::string(tok) + "' on line " + std::to_string(line_no));
      }
      row.push_back(v);
      i = j;
    }
    if (!row.empty()) rows.push_back(std::move(row));
    if (end == text.size()) break;
  }
  if (rows.empty()) throw ParseError("matrix file is empty");
  const std::size_t n = rows.size();
  Eigen::MatrixXd w(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != n) {
      throw ParseError("matrix row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                       " cells, expected " + std::to_string(n));
    }
    for (std::size_t c = 0; c < n; ++c) w(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  }
  return WeightedMatrix::from_matrix(std::move(w));
}

WeightedMatrix load_matrix(const std::filesystem::path& path) {
  return parse_matrix(read_text_file(path));
}

Graph binarize_density(const WeightedMatrix& wm, double rho) {
  if (!(rho > 0.0 && rho <= 1.0)) throw InvalidInput("density must lie in (0, 1]");
  const int n = wm.n();
  const std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
  const auto k = static_cast<std::int64_t>(std::floor(rho * static_cast<double>(pairs) + 0.5));
  struct Candidate {
    double w;
    int i, j;
  };
  std::vector<Candidate> cand;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (wm(i, j) > 0.0) cand.push_back({wm(i, j), i, j});
    }
  }
  std::stable_sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
    if (a.w != b.w) return a.w > b.w;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  const std::size_t take = static_cast<std::size_t>(std::min<std::int64_t>(k, static_cast<std::int64_t>(cand.size())));
  std::vector<Edge> edges;
  edges.reserve(take);
  for (std::size_t e = 0; e < take; ++e) edges.emplace_back(cand[e].i, cand[e].j);
  return Graph::from_edges(n, edges);
}

Permutation lr_halves(int n) {
  if (n < 0 || n % 2 != 0) throw InvalidInput("hemisphere split needs an even node count");
  const int half = n / 2;
  std::vector<int> img(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) img[static_cast<std::size_t>(i)] = i < half ? i + half : i - half;
  return Permutation::from_images(std::move(img));
}

Permutation lr_from_file(const std::filesystem::path& path, int n) {
  Permutation p = read_permutation(path);
  if (p.size() != n) {
    throw DimensionError("LR map has length " + std::to_string(p.size()) + ", expected " +
                         std::to_string(n));
  }
  return p;
}

}  // namespace approxsym
