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

#include <bit>
#include <compare>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "permweaver/errors.hpp"

namespace permweaver {

/// Packed bit word. Bit `j` (value `1 << j`) holds the character at
/// position `j` of a label, i.e. qubit `j`; position 0 is the leftmost
/// character of the string form.
using Word = std::uint64_t;

inline constexpr int kMaxQubits = 63;

inline constexpr Word bit_of(int pos) { return Word{1} << pos; }
inline constexpr Word low_mask(int n) { return n >= 64 ? ~Word{0} : (Word{1} << n) - 1; }

/// Exact nonnegative-denominator fraction used for heuristic scores, so that
/// ties compare exactly.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    // Denominators are positive; cross-multiplication preserves order.
    return (a.num * b.den) <=> (b.num * a.den);
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num * b.den == b.num * a.den;
  }
};

/// A computational-basis label over `n` qubits.
class BitLabel {
 public:
  BitLabel() = default;
  BitLabel(int n, Word bits);

  /// Parses a string of '0'/'1' characters; throws InputError otherwise.
  static BitLabel parse(std::string_view text);

  int size() const { return n_; }
  Word bits() const { return bits_; }
  bool bit(int pos) const { return (bits_ >> pos) & 1U; }
  BitLabel flipped(Word mask) const { return BitLabel(n_, bits_ ^ (mask & low_mask(n_))); }
  std::string str() const;

  friend auto operator<=>(const BitLabel&, const BitLabel&) = default;

 private:
  int n_ = 0;
  Word bits_ = 0;
};

/// A sub-hypercube: the labels matching a string over {0,1,*}.
/// `fixed` marks non-wildcard positions, `value` holds their bits.
class Pattern {
 public:
  Pattern() = default;
  Pattern(int n, Word fixed, Word value);

  static Pattern parse(std::string_view text);
  static Pattern all_wildcards(int n) { return Pattern(n, 0, 0); }
  /// The 0-wildcard pattern naming exactly `label`.
  static Pattern point(const BitLabel& label) {
    return Pattern(label.size(), low_mask(label.size()), label.bits());
  }

  int size() const { return n_; }
  Word fixed_mask() const { return fixed_; }
  Word value() const { return value_; }
  Word spanned_mask() const { return low_mask(n_) & ~fixed_; }
  int num_spanned() const { return n_ - std::popcount(fixed_); }
  std::uint64_t capacity() const { return std::uint64_t{1} << num_spanned(); }

  std::vector<int> fixed_dims() const;
  std::vector<int> spanned_dims() const;

  bool contains(Word bits) const { return (bits & fixed_) == value_; }

  /// Fixes an additional (currently spanned) position to `bit`.
  Pattern with_fixed(int pos, bool bit) const;
  /// Same positions, fixed values XOR-ed with `mask` (restricted to fixed positions).
  Pattern flipped(Word mask) const { return Pattern(n_, fixed_, value_ ^ (mask & fixed_)); }

  std::string str() const;

  friend auto operator<=>(const Pattern&, const Pattern&) = default;

 private:
  int n_ = 0;
  Word fixed_ = 0;
  Word value_ = 0;
};

int hamming(const BitLabel& a, const BitLabel& b);
bool conforms(const BitLabel& label, const Pattern& pattern);

/// Mean, over the labels, of the number of other labels in the set at
/// Hamming distance 1. Throws InputError on an empty set or mixed lengths.
Rational avg_adjacent_nonzero(std::span<const BitLabel> labels);

/// Packed-word variant used by the synthesis inner loops; labels must be distinct.
Rational avg_adjacent_nonzero_words(std::span<const Word> labels);

/// A partially specified bijection between basis labels.
struct LabelPair {
  BitLabel source;
  BitLabel destination;
};

class PermutationSpec {
 public:
  PermutationSpec() = default;
  /// Validates lengths and bijectivity; throws InputError.
  PermutationSpec(int n, std::vector<LabelPair> pairs);

  int num_qubits() const { return n_; }
  std::size_t size() const { return pairs_.size(); }
  const std::vector<LabelPair>& pairs() const { return pairs_; }

 private:
  int n_ = 0;
  std::vector<LabelPair> pairs_;
};

using Amplitude = std::complex<double>;

struct SparseEntry {
  BitLabel label;
  Amplitude amplitude;
};

inline constexpr double kNormTolerance = 1e-10;

/// A normalized state with few nonzero amplitudes. Entries are kept sorted
/// by label.
class SparseState {
 public:
  SparseState() = default;
  /// Rejects zero amplitudes, duplicate labels, and norms off by more than
  /// kNormTolerance.
  SparseState(int n, std::vector<SparseEntry> entries);

  int num_qubits() const { return n_; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<SparseEntry>& entries() const { return entries_; }
  std::vector<BitLabel> labels() const;
  std::vector<Word> label_words() const;

 private:
  int n_ = 0;
  std::vector<SparseEntry> entries_;
};

/// ceil(log2(m)) for m >= 1.
int ceil_log2(std::uint64_t m);

}  // namespace permweaver
