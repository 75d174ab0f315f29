// Copyright 2026 The relwl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <vector>

#include "relwl/history.hpp"
#include "relwl/kg.hpp"
#include "relwl/matrix.hpp"
#include "relwl/network.hpp"

namespace relwl {

// (Fts)_{ij} = -1 if j >= i, else 1. Columns are linearly independent.
Matrix<Rational> fts(std::size_t n);

struct SignMatrix {
  Matrix<Rational> x;  // n x n
  // column_order[k] = index of the input column that maps to Fts column k.
  std::vector<std::size_t> column_order;
};

// For a non-negative integer n x p matrix B with pairwise distinct nonzero
// columns (p <= n), returns X with sign(X B_sorted - J) = first p columns of
// Fts, B_sorted being B's columns in column_order. Throws PreconditionError
// otherwise.
SignMatrix build_sign_matrix(const Matrix<Rational>& b);

struct Rwl1Simulator {
  NetworkSpec spec;  // exact, sign, shared update, scaling messages, bias -1
  std::vector<Vector<Rational>> initial_features;  // Fts column of c(v)
};

// Exact R-MPNN whose layer-t features induce the rwl1,f partition of g for
// every t <= layers.
Rwl1Simulator build_rwl1_simulator(const KnowledgeGraph& g, std::size_t layers,
                                   const HistoryFunction& f = HistoryFunction::Identity());

struct CmpnnSimulator {
  NetworkSpec spec;  // C-MPNN on g with a pair-table initialization
  std::size_t num_nodes = 0;
};

// The rwl1 simulator of product_square(g), read back as a C-MPNN on g. Its
// feature partition over pairs equals rawl2,f at every layer. Needs a pair
// coloring with target node distinguishability.
CmpnnSimulator build_cmpnn_simulator(const KnowledgeGraph& g, std::size_t layers,
                                     const HistoryFunction& f = HistoryFunction::Identity());

}  // namespace relwl
