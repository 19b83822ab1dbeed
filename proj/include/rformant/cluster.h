// include/rformant/cluster.h

// Copyright 2026  The rformant Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef RFORMANT_CLUSTER_H_
#define RFORMANT_CLUSTER_H_

#include <string>
#include <vector>

#include "rformant/stats.h"

namespace rformant {

/// Agglomerative merge history. Leaves are nodes 0 .. m-1 (in label order of
/// the input matrix); merge k creates node m + k.
struct Dendrogram {
  struct Merge {
    size_t left = 0;
    size_t right = 0;
    double distance = 0.0;
    size_t size = 0;  // leaves under the new node
  };

  std::vector<std::string> leaves;
  std::vector<Merge> merges;

  size_t root() const { return leaves.size() + merges.size() - 1; }
  /// Merge distance of a node; 0 for leaves.
  double height(size_t node) const;
  /// Leaves left to right as drawn.
  std::vector<size_t> leaf_order() const;
};

/// UPGMA (average linkage). The distance from a merged cluster A+B to C is
/// (|A| d(A,C) + |B| d(B,C)) / (|A| + |B|). Ties go to the smallest (i, j)
/// position pair among the active clusters; a merged cluster takes the
/// position of its left member.
Dendrogram upgma(const DistanceMatrix &d);

/// Newick text with branch length (parent height - child height) / 2.
std::string to_newick(const Dendrogram &t);

/// Matrix of merge heights at which each pair of leaves first joins.
DistanceMatrix cophenetic(const Dendrogram &t);

}  // namespace rformant

#endif  // RFORMANT_CLUSTER_H_
