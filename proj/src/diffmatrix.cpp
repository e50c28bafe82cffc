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

#include "permweaver/diffmatrix.hpp"

#include <bit>
#include <cassert>

namespace permweaver {

DifferenceMatrix::DifferenceMatrix(const PermutationSpec& spec) : n_(spec.num_qubits()) {
  rows_.reserve(spec.size());
  for (const auto& p : spec.pairs()) {
    const Word src = p.source.bits();
    const Word dst = p.destination.bits();
    rows_.push_back({src, dst, src ^ dst});
  }
}

int DifferenceMatrix::total_errors() const {
  int total = 0;
  for (const auto& r : rows_) total += std::popcount(r.errors);
  return total;
}

int DifferenceMatrix::unfinished_rows() const {
  int count = 0;
  for (const auto& r : rows_) count += r.errors != 0 ? 1 : 0;
  return count;
}

void DifferenceMatrix::apply_block(const Pattern& shc1, const Pattern& shc2) {
  if (shc1.size() != n_ || shc2.size() != n_) throw InputError("apply_block: pattern width differs from matrix");
  if (shc1.fixed_mask() != shc2.fixed_mask()) throw InputError("apply_block: patterns differ in wildcard positions");
  const Word flip = shc1.value() ^ shc2.value();
  if (flip == 0) return;
  for (auto& r : rows_) {
    if (shc1.contains(r.current) || shc2.contains(r.current)) {
      r.current ^= flip;
      r.errors ^= flip;
    }
  }
  assert(consistent());
}

bool DifferenceMatrix::consistent() const {
  for (const auto& r : rows_) {
    if (r.errors != (r.current ^ r.destination)) return false;
  }
  return true;
}

DifferenceMatrix compute_difference_matrix(const PermutationSpec& spec) { return DifferenceMatrix(spec); }

int total_errors(const DifferenceMatrix& dm) { return dm.total_errors(); }

DifferenceMatrix apply_block(DifferenceMatrix dm, const Pattern& shc1, const Pattern& shc2) {
  dm.apply_block(shc1, shc2);
  return dm;
}

}  // namespace permweaver
