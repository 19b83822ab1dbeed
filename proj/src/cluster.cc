// src/cluster.cc

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

#include "rformant/cluster.h"

#include <charconv>
#include <functional>
#include <limits>

#include "rformant/error.h"

namespace rformant {

namespace {

std::string format_length(double v) {
  if (v == 0.0) v = 0.0;  // drop negative zero
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string newick_label(const std::string &s) {
  if (s.find_first_of(" ()[]':;,\t") == std::string::npos && !s.empty())
    return s;
  std::string q = "'";
  for (char c : s) {
    if (c == '\'') q += '\'';
    q += c;
  }
  return q + "'";
}

}  // namespace

double Dendrogram::height(size_t node) const {
  if (node < leaves.size()) return 0.0;
  return merges.at(node - leaves.size()).distance;
}

std::vector<size_t> Dendrogram::leaf_order() const {
  std::vector<size_t> out;
  if (leaves.empty()) return out;
  if (merges.empty()) {
    out.push_back(0);
    return out;
  }
  std::function<void(size_t)> walk = [&](size_t node) {
    if (node < leaves.size()) {
      out.push_back(node);
      return;
    }
    const Merge &m = merges[node - leaves.size()];
    walk(m.left);
    walk(m.right);
  };
  walk(root());
  return out;
}

Dendrogram upgma(const DistanceMatrix &d) {
  const size_t m = d.size();
  if (m < 2) throw Error("upgma: need at least two leaves");

  Dendrogram t;
  t.leaves = d.labels();

  // Active clusters in position order, with their node ids and sizes.
  std::vector<size_t> node(m), size(m, 1);
  std::vector<std::vector<double>> dist(m, std::vector<double>(m));
  for (size_t i = 0; i < m; ++i) {
    node[i] = i;
    for (size_t j = 0; j < m; ++j) dist[i][j] = d(i, j);
  }

  while (node.size() > 1) {
    const size_t k = node.size();
    size_t bi = 0, bj = 1;
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < k; ++i)
      for (size_t j = i + 1; j < k; ++j)
        if (dist[i][j] < best) {
          best = dist[i][j];
          bi = i;
          bj = j;
        }

    const double si = static_cast<double>(size[bi]);
    const double sj = static_cast<double>(size[bj]);
    for (size_t c = 0; c < k; ++c) {
      if (c == bi || c == bj) continue;
      double v = (si * dist[bi][c] + sj * dist[bj][c]) / (si + sj);
      dist[bi][c] = v;
      dist[c][bi] = v;
    }

    t.merges.push_back({node[bi], node[bj], best, size[bi] + size[bj]});
    node[bi] = m + t.merges.size() - 1;
    size[bi] += size[bj];

    node.erase(node.begin() + static_cast<long>(bj));
    size.erase(size.begin() + static_cast<long>(bj));
    dist.erase(dist.begin() + static_cast<long>(bj));
    for (auto &row : dist) row.erase(row.begin() + static_cast<long>(bj));
  }
  return t;
}

std::string to_newick(const Dendrogram &t) {
  if (t.leaves.empty()) return ";";
  std::function<std::string(size_t)> emit = [&](size_t n) -> std::string {
    if (n < t.leaves.size()) return newick_label(t.leaves[n]);
    const auto &m = t.merges[n - t.leaves.size()];
    auto branch = [&](size_t child) {
      return emit(child) + ":" +
             format_length((m.distance - t.height(child)) / 2.0);
    };
    return "(" + branch(m.left) + "," + branch(m.right) + ")";
  };
  return emit(t.merges.empty() ? 0 : t.root()) + ";";
}

DistanceMatrix cophenetic(const Dendrogram &t) {
  const size_t m = t.leaves.size();
  std::vector<double> values(m * m, 0.0);
  // Leaves under every node, built bottom-up.
  std::vector<std::vector<size_t>> members(m + t.merges.size());
  for (size_t i = 0; i < m; ++i) members[i] = {i};
  for (size_t k = 0; k < t.merges.size(); ++k) {
    const auto &mg = t.merges[k];
    for (size_t a : members[mg.left])
      for (size_t b : members[mg.right]) {
        values[a * m + b] = mg.distance;
        values[b * m + a] = mg.distance;
      }
    auto &dst = members[m + k];
    dst = members[mg.left];
    dst.insert(dst.end(), members[mg.right].begin(), members[mg.right].end());
  }
  return DistanceMatrix(t.leaves, std::move(values));
}

}  // namespace rformant
