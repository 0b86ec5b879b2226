// Copyright 2026 The fibmahler Authors
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

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "fibmahler/lattice.hpp"

namespace fibmahler {

/// z written as sum_k weights[k] * support[k], weights > 0 summing to 1.
struct ConvexWitness {
  ExponentVector point;
  std::vector<ExponentVector> support;
  std::vector<mpq_class> weights;
};

struct VertexReport {
  std::vector<ExponentVector> vertices;
  /// One witness per non-vertex, in family order.
  std::vector<ConvexWitness> nonVertices;
};

/// Exact phase-1 simplex (Bland's rule, rational tableau) deciding whether z
/// lies in the convex hull of `others`. Returns a basic feasible witness.
std::optional<ConvexWitness> convex_combination(const ExponentVector& z,
                                                const std::vector<ExponentVector>& others);

/// Non-negative weights, summing to 1, reproducing the point exactly.
bool is_valid_witness(const ConvexWitness& w);

/// Splits a family into vertices and non-vertices (members lying in the
/// hull of the remaining members). Members are tested in parallel.
VertexReport vertex_filter(const SetFamily& family);

}  // namespace fibmahler
