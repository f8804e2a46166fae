#include "approxsym/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "approxsym/error.hpp"
#include "approxsym/metrics.hpp"
#include "approxsym/rng.hpp"

namespace approxsym {
namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidInput(std::string(name) + " must lie in [0, 1]");
  }
}

void check_size(std::int64_t n) {
  if (n < 0 || n > kMaxGeneratedNodes) {
    throw InvalidInput("graph size " + std::to_string(n) + " outside [0, " +
                       std::to_string(kMaxGeneratedNodes) + "]");
  }
}

class AdjacencyBuilder {
 public:
  explicit AdjacencyBuilder(int n) : n_(n), adj_(static_cast<std::size_t>(n) * n, 0) {}

  void add(int i, int j) {
    adj_[static_cast<std::size_t>(i) * n_ + j] = 1;
    adj_[static_cast<std::size_t>(j) * n_ + i] = 1;
  }
  void remove(int i, int j) {
    adj_[static_cast<std::size_t>(i) * n_ + j] = 0;
    adj_[static_cast<std::size_t>(j) * n_ + i] = 0;
  }
  bool has(int i, int j) const { return adj_[static_cast<std::size_t>(i) * n_ + j] != 0; }

  Graph build() && { return Graph::from_adjacency(n_, std::move(adj_)); }

 private:
  int n_;
  std::vector<std::uint8_t> adj_;
};

}  // namespace

Graph gen_grid(const std::vector<int>& dims) {
  if (dims.empty()) throw InvalidInput("grid needs at least one dimension");
  std::int64_t n = 1;
  for (int d : dims) {
    if (d < 1) throw InvalidInput("grid dimensions must be positive");
    n *= d;
    check_size(n);
  }
  const int nodes = static_cast<int>(n);
  AdjacencyBuilder b(nodes);
  // stride[k] = product of dims after k.
  std::vector<int> stride(dims.size(), 1);
  for (std::size_t k = dims.size() - 1; k > 0; --k) stride[k - 1] = stride[k] * dims[k];
  for (int v = 0; v < nodes; ++v) {
    for (std::size_t k = 0; k < dims.size(); ++k) {
      const int coord = (v / stride[k]) % dims[k];
      if (coord + 1 < dims[k]) b.add(v, v + stride[k]);
    }
  }
  return std::move(b).build();
}

Graph gen_er(int n, double p, std::uint64_t seed) {
  check_size(n);
  check_probability(p, "edge probability");
  Rng rng(seed);
  AdjacencyBuilder b(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.bernoulli(p)) b.add(i, j);
    }
  }
  return std::move(b).build();
}

Graph gen_ba(int n, int m_attach, std::uint64_t seed) {
  check_size(n);
  if (m_attach < 1 || m_attach >= n) {
    throw InvalidInput("BA model requires 1 <= m_attach < n");
  }
  Rng rng(seed);
  AdjacencyBuilder b(n);
  std::vector<double> degree(static_cast<std::size_t>(n), 0.0);
  const int seed_nodes = m_attach + 1;
  for (int i = 0; i < seed_nodes; ++i) {
    for (int j = i + 1; j < seed_nodes; ++j) b.add(i, j);
    degree[static_cast<std::size_t>(i)] = m_attach;
  }
  std::vector<double> weight;
  std::vector<int> targets;
  for (int v = seed_nodes; v < n; ++v) {
    // Degrees are frozen for the whole step of node v.
    weight.assign(degree.begin(), degree.begin() + v);
    double total = std::accumulate(weight.begin(), weight.end(), 0.0);
    targets.clear();
    for (int k = 0; k < m_attach; ++k) {
      const double u = rng.uniform01() * total;
      double acc = 0.0;
      int pick = -1;
      for (int w = 0; w < v; ++w) {
        if (weight[static_cast<std::size_t>(w)] <= 0.0) continue;
        pick = w;
        acc += weight[static_cast<std::size_t>(w)];
        if (u < acc) break;
      }
      targets.push_back(pick);
      total -= weight[static_cast<std::size_t>(pick)];
      weight[static_cast<std::size_t>(pick)] = 0.0;
    }
    for (int w : targets) {
      b.add(v, w);
      degree[static_cast<std::size_t>(w)] += 1.0;
    }
    degree[static_cast<std::size_t>(v)] = m_attach;
  }
  return std::move(b).build();
}

Graph gen_sbm(const std::vector<int>& sizes, const std::vector<std::vector<double>>& probs,
              std::uint64_t seed) {
  const std::size_t r = sizes.size();
  if (r == 0) throw InvalidInput("SBM needs at least one block");
  if (probs.size() != r) throw InvalidInput("SBM probability matrix must be r x r with r = number of blocks");
  for (std::size_t a = 0; a < r; ++a) {
    if (probs[a].size() != r) throw InvalidInput("SBM probability matrix must be square");
    for (std::size_t c = 0; c < r; ++c) {
      check_probability(probs[a][c], "SBM probability");
      if (probs[a][c] != probs[c][a]) throw InvalidInput("SBM probability matrix must be symmetric");
    }
  }
  std::int64_t n = 0;
  for (int s : sizes) {
    if (s < 0) throw InvalidInput("SBM block sizes must be nonnegative");
    n += s;
  }
  check_size(n);
  std::vector<std::size_t> block;
  for (std::size_t a = 0; a < r; ++a) block.insert(block.end(), static_cast<std::size_t>(sizes[a]), a);
  Rng rng(seed);
  const int nodes = static_cast<int>(n);
  AdjacencyBuilder b(nodes);
  for (int i = 0; i < nodes; ++i) {
    for (int j = i + 1; j < nodes; ++j) {
      if (rng.bernoulli(probs[block[static_cast<std::size_t>(i)]][block[static_cast<std::size_t>(j)]])) b.add(i, j);
    }
  }
  return std::move(b).build();
}

LrmInstance gen_lrm(int n, double p, double q, std::uint64_t seed) {
  if (n < 0 || n % 2 != 0) throw InvalidInput("LRM size must be a nonnegative even number");
  check_size(n);
  check_probability(p, "LRM edge probability p");
  check_probability(q, "LRM cross probability q");
  const int half = n / 2;
  Rng rng(seed);
  AdjacencyBuilder b(n);
  for (int i = 0; i < half; ++i) {
    for (int j = i + 1; j < half; ++j) {
      if (rng.bernoulli(p)) {
        b.add(i, j);
        b.add(i + half, j + half);
      }
    }
  }
  for (int i = 0; i < half; ++i) {
    if (rng.bernoulli(q)) b.add(i, i + half);
  }
  std::vector<int> lr(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) lr[static_cast<std::size_t>(i)] = i < half ? i + half : i - half;
  return {std::move(b).build(), Permutation::from_images(std::move(lr)), half};
}

Graph rewire_k(const Graph& g, int k, std::uint64_t seed) {
  if (k < 0) throw InvalidInput("rewire count must be nonnegative");
  if (k == 0) return g;
  const int n = g.n();
  const std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
  if (g.edge_count() == 0 || g.edge_count() == pairs) {
    throw InvalidInput("rewiring needs at least one edge and one absent pair");
  }
  Rng rng(seed);
  std::vector<Edge> edges = g.edges();
  AdjacencyBuilder b(n);
  for (const auto& [i, j] : edges) b.add(i, j);
  for (int step = 0; step < k; ++step) {
    const std::size_t idx = rng.uniform_index(edges.size());
    const Edge removed = edges[idx];
    b.remove(removed.first, removed.second);
    // Rejection sampling over unordered pairs; at least one absent pair other
    // than the removed one always exists.
    Edge added;
    for (;;) {
      auto [i, j] = rng.distinct_pair(n);
      if (i > j) std::swap(i, j);
      if (b.has(i, j) || Edge{i, j} == removed) continue;
      added = {i, j};
      break;
    }
    b.add(added.first, added.second);
    edges[idx] = added;
  }
  return std::move(b).build();
}

DistortedLrmInstance distort_lrm(const LrmInstance& base, int r, int t, std::uint64_t seed) {
  const int n = base.graph.n();
  const int half = base.half;
  if (t < 2 || t % 2 != 0) throw InvalidInput("twin count t must be even and at least 2");
  if (r < 0 || r > half) throw InvalidInput("anchor count r must lie in [0, n/2]");
  const int total = n + 2 * t;
  check_size(total);

  Rng rng(seed);
  std::vector<int> pool(static_cast<std::size_t>(half));
  std::iota(pool.begin(), pool.end(), 0);
  // Partial Fisher-Yates: first r entries are a uniform sample without replacement.
  for (int i = 0; i < r; ++i) {
    const int j = i + rng.uniform_int(half - i);
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  std::vector<int> x1(pool.begin(), pool.begin() + r);
  std::sort(x1.begin(), x1.end());
  std::vector<int> x2;
  for (int v : x1) x2.push_back(base.lr[v]);

  AdjacencyBuilder b(total);
  for (const auto& [i, j] : base.graph.edges()) b.add(i, j);
  std::vector<int> t1, t2;
  for (int k = 0; k < t; ++k) t1.push_back(n + k);
  for (int k = 0; k < t; ++k) t2.push_back(n + t + k);
  for (int k = 0; k < t; ++k) {
    for (int x : x1) b.add(t1[static_cast<std::size_t>(k)], x);
    for (int x : x2) b.add(t2[static_cast<std::size_t>(k)], x);
  }
  const int h = t / 2;
  for (int a = 0; a < h; ++a) {
    for (int c = a + 1; c < h; ++c) {
      b.add(t1[static_cast<std::size_t>(a)], t1[static_cast<std::size_t>(c)]);
      b.add(t2[static_cast<std::size_t>(h + a)], t2[static_cast<std::size_t>(h + c)]);
    }
  }

  std::vector<int> lr(static_cast<std::size_t>(total));
  for (int i = 0; i < n; ++i) lr[static_cast<std::size_t>(i)] = base.lr[i];
  for (int k = 0; k < t; ++k) {
    lr[static_cast<std::size_t>(t1[static_cast<std::size_t>(k)])] = t2[static_cast<std::size_t>(k)];
    lr[static_cast<std::size_t>(t2[static_cast<std::size_t>(k)])] = t1[static_cast<std::size_t>(k)];
  }

  DistortedLrmInstance out;
  out.graph = std::move(b).build();
  out.lr = Permutation::from_images(std::move(lr));
  out.r = r;
  out.t = t;
  out.twins_left = std::move(t1);
  out.twins_right = std::move(t2);
  out.anchors_left = std::move(x1);
  out.anchors_right = std::move(x2);
  return out;
}

Permutation distorted_lrm_automorphism(const DistortedLrmInstance& inst) {
  std::vector<int> img = inst.lr.images();
  const int h = inst.t / 2;
  const auto& t1 = inst.twins_left;
  const auto& t2 = inst.twins_right;
  for (int k = 0; k < h; ++k) {
    // clique of T1 -> clique of T2, and the plain halves onto each other
    img[static_cast<std::size_t>(t1[static_cast<std::size_t>(k)])] = t2[static_cast<std::size_t>(h + k)];
    img[static_cast<std::size_t>(t2[static_cast<std::size_t>(h + k)])] = t1[static_cast<std::size_t>(k)];
    img[static_cast<std::size_t>(t1[static_cast<std::size_t>(h + k)])] = t2[static_cast<std::size_t>(k)];
    img[static_cast<std::size_t>(t2[static_cast<std::size_t>(k)])] = t1[static_cast<std::size_t>(h + k)];
  }
  return Permutation::from_images(std::move(img));
}

Permutation reshuffle_perm(const Permutation& p, int l, std::uint64_t seed) {
  if (l < 0) throw InvalidInput("reshuffle count must be nonnegative");
  if (l == 0) return p;
  const int n = p.size();
  if (n < 2) throw InvalidInput("reshuffling needs at least two positions");
  Rng rng(seed);
  std::vector<int> img = p.images();
  for (int s = 0; s < l; ++s) {
    const auto [i, j] = rng.distinct_pair(n);
    std::swap(img[static_cast<std::size_t>(i)], img[static_cast<std::size_t>(j)]);
  }
  return Permutation::from_images(std::move(img));
}

Permutation random_permutation(int n, std::uint64_t seed) {
  if (n < 0) throw InvalidInput("permutation size must be nonnegative");
  Rng rng(seed);
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 0);
  rng.shuffle(img);
  return Permutation::from_images(std::move(img));
}

Permutation random_perm_max_fp(int n, int max_fixed_points, std::uint64_t seed) {
  if (n < 0) throw InvalidInput("permutation size must be nonnegative");
  if (max_fixed_points < 0 || max_fixed_points > n) {
    throw InvalidInput("fixed-point cap must lie in [0, n]");
  }
  if (n == 1 && max_fixed_points == 0) {
    throw InvalidInput("no permutation of a single node has zero fixed points");
  }
  Rng rng(seed);
  std::vector<int> img(static_cast<std::size_t>(n));
  for (;;) {
    std::iota(img.begin(), img.end(), 0);
    rng.shuffle(img);
    int fp = 0;
    for (int i = 0; i < n; ++i) fp += img[static_cast<std::size_t>(i)] == i ? 1 : 0;
    if (fp <= max_fixed_points) return Permutation::from_images(img);
  }
}

}  // namespace approxsym
