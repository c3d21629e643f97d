#include "tropispec/graph.hpp"

#include <algorithm>
#include <cmath>

namespace tropispec {

std::vector<std::vector<int>> support_digraph(const ConeMatrix& A) {
  const int n = A.dim();
  std::vector<std::vector<int>> adj(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (A(i, j) > 0.0) adj[static_cast<size_t>(i)].push_back(j);
  return adj;
}

SccResult tarjan_scc(int n, const std::vector<std::vector<int>>& adj) {
  SccResult res;
  res.comp.assign(static_cast<size_t>(n), -1);
  std::vector<int> index(static_cast<size_t>(n), -1), low(static_cast<size_t>(n), 0);
  std::vector<char> onStack(static_cast<size_t>(n), 0);
  std::vector<int> stack;
  int nextIndex = 0;

  // explicit DFS stack: (node, next child position)
  std::vector<std::pair<int, size_t>> dfs;
  for (int root = 0; root < n; ++root) {
    if (index[static_cast<size_t>(root)] != -1) continue;
    dfs.emplace_back(root, 0);
    while (!dfs.empty()) {
      auto& [v, ci] = dfs.back();
      if (ci == 0) {
        index[static_cast<size_t>(v)] = low[static_cast<size_t>(v)] = nextIndex++;
        stack.push_back(v);
        onStack[static_cast<size_t>(v)] = 1;
      }
      bool descended = false;
      while (ci < adj[static_cast<size_t>(v)].size()) {
        const int w = adj[static_cast<size_t>(v)][ci++];
        if (index[static_cast<size_t>(w)] == -1) {
          dfs.emplace_back(w, 0);
          descended = true;
          break;
        }
        if (onStack[static_cast<size_t>(w)])
          low[static_cast<size_t>(v)] = std::min(low[static_cast<size_t>(v)], index[static_cast<size_t>(w)]);
      }
      if (descended) continue;
      if (low[static_cast<size_t>(v)] == index[static_cast<size_t>(v)]) {
        std::vector<int> comp;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          onStack[static_cast<size_t>(w)] = 0;
          res.comp[static_cast<size_t>(w)] = res.count;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        res.members.push_back(std::move(comp));
        ++res.count;
      }
      const int child = v;
      dfs.pop_back();
      if (!dfs.empty()) {
        const int parent = dfs.back().first;
        low[static_cast<size_t>(parent)] =
            std::min(low[static_cast<size_t>(parent)], low[static_cast<size_t>(child)]);
      }
    }
  }
  return res;
}

namespace {

// Geometric mean of the cycle's edge weights, recomputed from the linear
// entries where that is exact (length 1 and 2).
double recompute_mean(const std::vector<int>& cyc, int n, const std::vector<double>& logW,
                      const std::vector<double>& linW, double& logMean) {
  const size_t len = cyc.size();
  double s = 0.0;
  for (size_t k = 0; k < len; ++k) {
    const int u = cyc[k], v = cyc[(k + 1) % len];
    s += logW[static_cast<size_t>(u) * n + v];
  }
  logMean = s / static_cast<double>(len);
  if (len == 1) return linW[static_cast<size_t>(cyc[0]) * n + cyc[0]];
  if (len == 2) {
    const double p = linW[static_cast<size_t>(cyc[0]) * n + cyc[1]] *
                     linW[static_cast<size_t>(cyc[1]) * n + cyc[0]];
    if (std::isfinite(p) && p > 0.0) return std::sqrt(p);
  }
  return std::exp(logMean);
}

void rotate_smallest_first(std::vector<int>& cyc) {
  const auto it = std::min_element(cyc.begin(), cyc.end());
  std::rotate(cyc.begin(), it, cyc.end());
}

}  // namespace

std::optional<CycleInfo> karp_max_mean_cycle(const std::vector<int>& nodes, int n,
                                             const std::vector<double>& logW,
                                             const std::vector<double>& linW) {
  const int h = static_cast<int>(nodes.size());
  // local adjacency restricted to the component
  std::vector<int> local(static_cast<size_t>(n), -1);
  for (int a = 0; a < h; ++a) local[static_cast<size_t>(nodes[static_cast<size_t>(a)])] = a;

  auto w = [&](int a, int b) {
    return logW[static_cast<size_t>(nodes[static_cast<size_t>(a)]) * n + nodes[static_cast<size_t>(b)]];
  };

  if (h == 1) {
    const double self = w(0, 0);
    if (self == kNegInf) return std::nullopt;
    CycleInfo c;
    c.nodes = {nodes[0]};
    c.geometric_mean = recompute_mean(c.nodes, n, logW, linW, c.log_mean);
    return c;
  }

  // D[k][v] = max log weight of a k-edge walk source -> v inside the SCC
  const int src = 0;
  std::vector<std::vector<double>> D(static_cast<size_t>(h) + 1,
                                     std::vector<double>(static_cast<size_t>(h), kNegInf));
  std::vector<std::vector<int>> parent(static_cast<size_t>(h) + 1,
                                       std::vector<int>(static_cast<size_t>(h), -1));
  D[0][static_cast<size_t>(src)] = 0.0;
  for (int k = 1; k <= h; ++k) {
    for (int v = 0; v < h; ++v) {
      double best = kNegInf;
      int bestU = -1;
      for (int u = 0; u < h; ++u) {
        const double wu = w(u, v);
        if (wu == kNegInf || D[static_cast<size_t>(k - 1)][static_cast<size_t>(u)] == kNegInf) continue;
        const double cand = D[static_cast<size_t>(k - 1)][static_cast<size_t>(u)] + wu;
        if (cand > best) {
          best = cand;
          bestU = u;
        }
      }
      D[static_cast<size_t>(k)][static_cast<size_t>(v)] = best;
      parent[static_cast<size_t>(k)][static_cast<size_t>(v)] = bestU;
    }
  }

  double mu = kNegInf;
  int argV = -1;
  for (int v = 0; v < h; ++v) {
    if (D[static_cast<size_t>(h)][static_cast<size_t>(v)] == kNegInf) continue;
    double inner = std::numeric_limits<double>::infinity();
    for (int k = 0; k < h; ++k) {
      if (D[static_cast<size_t>(k)][static_cast<size_t>(v)] == kNegInf) continue;
      inner = std::min(inner, (D[static_cast<size_t>(h)][static_cast<size_t>(v)] -
                               D[static_cast<size_t>(k)][static_cast<size_t>(v)]) /
                                  static_cast<double>(h - k));
    }
    if (inner != std::numeric_limits<double>::infinity() && inner > mu) {
      mu = inner;
      argV = v;
    }
  }
  if (argV < 0) return std::nullopt;  // no length-h walk: cannot happen in an SCC with a cycle

  // Every cycle on the walk realizing D[h][argV] attains the optimum mean;
  // backtrack and cut at the first repeated node.
  std::vector<int> walk(static_cast<size_t>(h) + 1);
  walk[static_cast<size_t>(h)] = argV;
  for (int k = h; k > 0; --k)
    walk[static_cast<size_t>(k - 1)] = parent[static_cast<size_t>(k)][static_cast<size_t>(walk[static_cast<size_t>(k)])];
  std::vector<int> lastSeen(static_cast<size_t>(h), -1);
  int cycFrom = -1, cycTo = -1;
  for (int k = 0; k <= h; ++k) {
    const int v = walk[static_cast<size_t>(k)];
    if (lastSeen[static_cast<size_t>(v)] >= 0) {
      cycFrom = lastSeen[static_cast<size_t>(v)];
      cycTo = k;
      break;
    }
    lastSeen[static_cast<size_t>(v)] = k;
  }
  std::vector<int> cyc;
  for (int k = cycFrom; k < cycTo; ++k)
    cyc.push_back(nodes[static_cast<size_t>(walk[static_cast<size_t>(k)])]);

  CycleInfo c;
  c.nodes = std::move(cyc);
  rotate_smallest_first(c.nodes);
  c.geometric_mean = recompute_mean(c.nodes, n, logW, linW, c.log_mean);

  // Prefer an equally good self-loop: its mean is exact in linear
  // arithmetic and the node sequence is lexicographically smallest.
  if (c.nodes.size() > 1) {
    const double tol = 1e-12 * std::max(1.0, std::abs(c.log_mean));
    for (int a = 0; a < h; ++a) {
      const double self = w(a, a);
      if (self != kNegInf && self >= c.log_mean - tol) {
        CycleInfo loop;
        loop.nodes = {nodes[static_cast<size_t>(a)]};
        loop.geometric_mean = recompute_mean(loop.nodes, n, logW, linW, loop.log_mean);
        return loop;
      }
    }
  }
  return c;
}

}  // namespace tropispec
