#pragma once

#include <cstddef>
#include <vector>

#include "mdlcorr/types.hpp"

namespace mdlcorr {

/// Sparse contingency table between partitions U (rows) and V (columns).
struct ContingencyTable {
  struct Cell {
    int row;
    int col;
    long count;
  };
  std::vector<Cell> cells;  ///< non-zero cells, sorted by (row, col)
  std::vector<long> row_sums;
  std::vector<long> col_sums;
  long total = 0;
};

ContingencyTable contingency(const Partition& u, const Partition& v);

/// Mutual information in nats.
double mutual_information(const ContingencyTable& table);

/// Expected mutual information (nats) under the hypergeometric permutation
/// model with the table's marginals.
double expected_mutual_information(const ContingencyTable& table);

/// Adjusted mutual information with arithmetic-mean normalization.
/// Conventions: 1 for partitions identical up to relabeling (including two
/// one-module partitions); 0 when exactly one side has a single cluster.
/// Throws InvalidArgument on a length mismatch.
double ami(const Partition& u, const Partition& v);

/// For each candidate cluster, the reference cluster with maximal Jaccard
/// index (ties to the smaller reference label).
std::vector<int> best_jaccard_match(const Partition& reference, const Partition& candidate);

/// Per-item flag: true iff the item's candidate cluster maps (by Jaccard) to
/// the item's reference cluster.
std::vector<bool> match_clusters_jaccard(const Partition& reference, const Partition& candidate);

}  // namespace mdlcorr
