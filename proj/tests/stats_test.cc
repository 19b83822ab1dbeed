// tests/stats_test.cc

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

#include "doctest.h"
#include "rformant/error.h"
#include "rformant/stats.h"
#include "test_util.h"

using namespace rformant;
using namespace rformant::testing;

using V = std::vector<double>;

TEST_CASE("pearson") {
  CHECK(pearson_r(V{1, 2, 3}, V{2, 4, 6}) == 1.0);
  CHECK(pearson_r(V{1, 2, 3}, V{3, 2, 1}) == -1.0);
  CHECK(pearson_r(V{1, 2, 3}, V{1, 3, 2}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(pearson_r(V{1, 1, 1}, V{1, 2, 3}), Error);
  CHECK_THROWS_AS(pearson_r(V{1, 2}, V{1, 2, 3}), Error);
}

TEST_CASE("hamming and manhattan on bins") {
  CHECK(hamming_distance(V{0.1, 0.2}, V{0.1, 0.2}) == 0);
  CHECK(hamming_distance(V{1, 0, 0}, V{0, 1, 0}) == 2);
  CHECK(hamming_distance(V{0.851, 0.149}, V{0.854, 0.146}) == 0);
  CHECK(bin_distance(V{1, 0, 0}, V{0, 1, 0}, Metric::kManhattan) == 2.0);
  CHECK(bin_distance(V{1, 0, 0}, V{0, 1, 0}, Metric::kHamming) == 2.0);
  CHECK(parse_metric("hamming") == Metric::kHamming);
  CHECK_THROWS_AS(parse_metric("euclid"), Error);
}

namespace {

RFormantProfile prof(std::string label, V bins) {
  RFormantProfile p;
  p.label = std::move(label);
  p.bins = std::move(bins);
  p.n_bins = static_cast<int>(p.bins.size());
  return p;
}

}  // namespace

TEST_CASE("distance matrix from profiles") {
  std::vector<RFormantProfile> ps = {prof("a", {0.5, 0.5, 0, 0}), prof("b", {0, 1, 0, 0}),
                                     prof("c", {0.25, 0.25, 0.25, 0.25})};
  auto d = distance_matrix(ps, Metric::kManhattan);
  CHECK(d.labels() == std::vector<std::string>{"a", "b", "c"});
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) {
      double want = 0;
      for (size_t k = 0; k < 4; ++k) want += std::abs(ps[i].bins[k] - ps[j].bins[k]);
      CHECK(d(i, j) == doctest::Approx(want));
    }
  std::vector<RFormantProfile> same = {prof("a", {1, 0}), prof("b", {1, 0})};
  CHECK(distance_matrix(same, Metric::kManhattan)(0, 1) == 0.0);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<RFormantProfile> r;
    for (int i = 0; i < 5; ++i) {
      V b(10);
      for (double &x : b) x = u(rng);
      r.push_back(prof(std::string(1, static_cast<char>('a' + i)), b));
    }
    for (Metric m : {Metric::kManhattan, Metric::kHamming}) {
      auto dm = distance_matrix(r, m);
      for (size_t i = 0; i < 5; ++i)
        for (size_t j = 0; j < 5; ++j)
          for (size_t k = 0; k < 5; ++k) CHECK(dm(i, j) <= dm(i, k) + dm(k, j) + 1e-12);
    }
  }
}

TEST_CASE("distance matrix validation") {
  CHECK_THROWS_AS(DistanceMatrix({"a", "b"}, {0, 1, 2, 0}), Error);
  CHECK_THROWS_AS(DistanceMatrix({"a", "a"}, {0, 1, 1, 0}), Error);
  CHECK_THROWS_AS(DistanceMatrix({"a", "b"}, {1, 1, 1, 0}), Error);
  CHECK_THROWS_AS(DistanceMatrix({"a", "b"}, {0, -1, -1, 0}), Error);
  CHECK_THROWS_AS(DistanceMatrix({"a", "b"}, {0, 1, 1}), Error);
  DistanceMatrix ok({"a", "b", "c"}, {0, 1, 2, 1, 0, 3, 2, 3, 0});
  CHECK(ok.upper_triangle() == V{1, 2, 3});
  std::vector<size_t> order = {2, 0, 1};
  auto p = ok.permuted(order);
  CHECK(p(0, 1) == 2.0);
  CHECK(p(1, 2) == 1.0);
}

TEST_CASE("mantel") {
  DistanceMatrix a({"A", "B", "C", "D"}, {0, 1, 2, 3, 1, 0, 4, 5, 2, 4, 0, 6, 3, 5, 6, 0});
  MantelResult m = mantel(a, a, 999, 0);
  CHECK(m.r == 1.0);
  CHECK(m.p <= 0.05);
  CHECK(m.permutations == 999);
  MantelResult again = mantel(a, a, 999, 0);
  CHECK(again.r == m.r);
  CHECK(again.p == m.p);

  // Constant matrices are identical, so r is 1 by definition.
  DistanceMatrix flat({"A", "B", "C"}, {0, 1, 1, 1, 0, 1, 1, 1, 0});
  CHECK(mantel(flat, flat, 99, 0).r == 1.0);

  DistanceMatrix b({"A", "B", "C", "D"}, {0, 6, 5, 4, 6, 0, 3, 2, 5, 3, 0, 1, 4, 2, 1, 0});
  MantelResult x = mantel(a, b, 999, 42);
  CHECK(x.r == doctest::Approx(pearson_r(a.upper_triangle(), b.upper_triangle())));
  CHECK(x.p > 0.0);
  CHECK(x.p <= 1.0);

  // Relabelled rows in a different order give the same answer.
  std::vector<size_t> order = {3, 1, 0, 2};
  MantelResult y = mantel(a.permuted(order), b.permuted(order), 999, 42);
  CHECK(y.r == x.r);
  CHECK(y.p == x.p);

  DistanceMatrix other({"A", "B", "C", "E"}, {0, 1, 2, 3, 1, 0, 4, 5, 2, 4, 0, 6, 3, 5, 6, 0});
  CHECK_THROWS_AS(mantel(a, other, 999, 0), Error);
  CHECK_THROWS_AS(mantel(a, a, 10, 0), Error);
}

TEST_CASE("mantel false positive rate") {
  std::mt19937_64 rng(99);
  int hits = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto d1 = random_distance_matrix(6, rng);
    auto d2 = random_distance_matrix(6, rng);
    auto m = mantel(DistanceMatrix(letters(6), flatten(d1)),
                    DistanceMatrix(letters(6), flatten(d2)), 999, 0);
    if (m.p < 0.05) ++hits;
  }
  CHECK(hits <= 4);
}

TEST_CASE("significance and summaries") {
  CHECK(significance(0.01) == "**");
  CHECK(significance(0.05) == "*");
  CHECK(significance(0.051) == "ns");
  auto s = correlation_summary({{"u1", 0.1}, {"u2", 0.2}, {"u3", 0.3}}, "AMS:AEMS");
  CHECK(s.mean_r == doctest::Approx(0.2));
  CHECK(s.min_label == "u1");
  CHECK(s.min_r == 0.1);
  CHECK(s.max_label == "u3");
  CHECK(s.max_r == 0.3);
  CHECK(s.count == 3);
  auto one = correlation_summary({{"u", 0.4}}, "p");
  CHECK(one.mean_r == 0.4);
  CHECK(one.min_r == 0.4);
  CHECK(one.max_r == 0.4);
}

TEST_CASE("permutation rng") {
  PermutationRng a(0), b(0);
  for (int i = 0; i < 100; ++i) CHECK(a.below(7) == b.below(7));
  PermutationRng c(1);
  std::vector<size_t> v = {0, 1, 2, 3, 4, 5, 6, 7};
  c.shuffle(v);
  std::vector<size_t> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<size_t>{0, 1, 2, 3, 4, 5, 6, 7});
  CHECK_THROWS_AS(c.below(0), Error);
}
