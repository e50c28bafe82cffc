// Copyright 2026 The Permweaver Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <vector>

#include "permweaver/core.hpp"

namespace permweaver {

/// One row of the difference matrix. `errors` has bit j set iff the sign at
/// column j is +1 (the row still needs a flip there).
struct DiffRow {
  Word current = 0;
  Word destination = 0;
  Word errors = 0;
};

/// The m x n sign matrix driving the greedy swap search. Rows stay in input
/// order; the current labels move as swaps are applied, destinations never do.
class DifferenceMatrix {
 public:
  DifferenceMatrix() = default;
  explicit DifferenceMatrix(const PermutationSpec& spec);

  int num_qubits() const { return n_; }
  std::size_t num_rows() const { return rows_.size(); }
  std::span<const DiffRow> rows() const { return rows_; }
  const DiffRow& row(std::size_t i) const { return rows_.at(i); }

  BitLabel current_label(std::size_t i) const { return BitLabel(n_, row(i).current); }
  BitLabel destination(std::size_t i) const { return BitLabel(n_, row(i).destination); }
  /// +1 if row i must still flip position j, -1 otherwise.
  int sign(std::size_t i, int j) const { return (row(i).errors >> j) & 1U ? +1 : -1; }

  int total_errors() const;
  /// Rows whose current label differs from the destination.
  int unfinished_rows() const;

  /// Swaps the two SHCs in place: every row conforming to either pattern has
  /// its label and signs flipped at the positions where the patterns differ.
  /// Throws InputError unless the patterns share wildcard positions.
  void apply_block(const Pattern& shc1, const Pattern& shc2);

  /// Debug check that the stored signs agree with label XOR destination.
  bool consistent() const;

 private:
  int n_ = 0;
  std::vector<DiffRow> rows_;
};

DifferenceMatrix compute_difference_matrix(const PermutationSpec& spec);
int total_errors(const DifferenceMatrix& dm);
DifferenceMatrix apply_block(DifferenceMatrix dm, const Pattern& shc1, const Pattern& shc2);

}  // namespace permweaver
