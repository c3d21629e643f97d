#pragma once

#include <optional>
#include <vector>

#include "tropispec/core.hpp"

namespace tropispec {

// Strongly connected components of the digraph with edge i -> j when
// A_ij > 0.  Component ids are assigned in reverse topological order of
// the condensation (edges go from higher id to lower id or stay inside).
struct SccResult {
  std::vector<int> comp;                  // node -> component id
  std::vector<std::vector<int>> members;  // component id -> sorted node list
  int count = 0;
};

SccResult tarjan_scc(int n, const std::vector<std::vector<int>>& adj);

// Adjacency lists of the positive-support digraph of A.
std::vector<std::vector<int>> support_digraph(const ConeMatrix& A);

// A directed cycle and its geometric mean recomputed from the matrix.
struct CycleInfo {
  std::vector<int> nodes;       // cyclic node sequence, smallest node first
  double log_mean = kNegInf;    // arithmetic mean of edge log weights
  double geometric_mean = 0.0;  // exp(log_mean); exact for self-loops
};

// Maximum cycle geometric mean inside one strongly connected component,
// via Karp's minimum-mean recurrence run for maxima on log weights.
// Returns nullopt when the component contains no cycle (single node, no
// self-loop).  logW is the full n x n log-entry matrix of A; linW holds
// the linear entries so short-cycle means stay exact.
std::optional<CycleInfo> karp_max_mean_cycle(const std::vector<int>& nodes, int n,
                                             const std::vector<double>& logW,
                                             const std::vector<double>& linW);

}  // namespace tropispec
