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

#include "permweaver/core.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace permweaver {

namespace {

void check_width(int n) {
  if (n < 0 || n > kMaxQubits) {
    throw InputError("qubit count " + std::to_string(n) + " outside [0, " +
                     std::to_string(kMaxQubits) + "]");
  }
}

}  // namespace

BitLabel::BitLabel(int n, Word bits) : n_(n), bits_(bits) {
  check_width(n);
  if ((bits & ~low_mask(n)) != 0) throw InputError("label bits exceed width");
}

BitLabel BitLabel::parse(std::string_view text) {
  check_width(static_cast<int>(text.size()));
  Word bits = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      bits |= bit_of(static_cast<int>(i));
    } else if (text[i] != '0') {
      throw InputError("label '" + std::string(text) + "' contains a character other than 0/1");
    }
  }
  return BitLabel(static_cast<int>(text.size()), bits);
}

std::string BitLabel::str() const {
  std::string out(static_cast<std::size_t>(n_), '0');
  for (int i = 0; i < n_; ++i) {
    if (bit(i)) out[static_cast<std::size_t>(i)] = '1';
  }
  return out;
}

Pattern::Pattern(int n, Word fixed, Word value) : n_(n), fixed_(fixed), value_(value) {
  check_width(n);
  if ((fixed & ~low_mask(n)) != 0) throw InputError("pattern positions exceed width");
  if ((value & ~fixed) != 0) throw InputError("pattern value set on a wildcard position");
}

Pattern Pattern::parse(std::string_view text) {
  check_width(static_cast<int>(text.size()));
  Word fixed = 0;
  Word value = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const Word b = bit_of(static_cast<int>(i));
    switch (text[i]) {
      case '*':
        break;
      case '1':
        value |= b;
        [[fallthrough]];
      case '0':
        fixed |= b;
        break;
      default:
        throw InputError("pattern '" + std::string(text) + "' contains a character other than 0/1/*");
    }
  }
  return Pattern(static_cast<int>(text.size()), fixed, value);
}

std::vector<int> Pattern::fixed_dims() const {
  std::vector<int> out;
  for (int i = 0; i < n_; ++i) {
    if (fixed_ & bit_of(i)) out.push_back(i);
  }
  return out;
}

std::vector<int> Pattern::spanned_dims() const {
  std::vector<int> out;
  for (int i = 0; i < n_; ++i) {
    if (!(fixed_ & bit_of(i))) out.push_back(i);
  }
  return out;
}

Pattern Pattern::with_fixed(int pos, bool bit) const {
  if (pos < 0 || pos >= n_) throw InputError("position out of range");
  if (fixed_ & bit_of(pos)) throw InputError("position already fixed");
  return Pattern(n_, fixed_ | bit_of(pos), value_ | (bit ? bit_of(pos) : 0));
}

std::string Pattern::str() const {
  std::string out(static_cast<std::size_t>(n_), '*');
  for (int i = 0; i < n_; ++i) {
    if (fixed_ & bit_of(i)) out[static_cast<std::size_t>(i)] = (value_ & bit_of(i)) ? '1' : '0';
  }
  return out;
}

int hamming(const BitLabel& a, const BitLabel& b) {
  if (a.size() != b.size()) throw InputError("hamming: label lengths differ");
  return std::popcount(a.bits() ^ b.bits());
}

bool conforms(const BitLabel& label, const Pattern& pattern) {
  if (label.size() != pattern.size()) throw InputError("conforms: label and pattern lengths differ");
  return pattern.contains(label.bits());
}

Rational avg_adjacent_nonzero_words(std::span<const Word> labels) {
  if (labels.empty()) return Rational{0, 1};
  std::int64_t adjacent_pairs = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      if (std::popcount(labels[i] ^ labels[j]) == 1) ++adjacent_pairs;
    }
  }
  return Rational{2 * adjacent_pairs, static_cast<std::int64_t>(labels.size())};
}

Rational avg_adjacent_nonzero(std::span<const BitLabel> labels) {
  if (labels.empty()) throw InputError("avg_adjacent_nonzero: empty label set");
  std::vector<Word> words;
  words.reserve(labels.size());
  for (const auto& l : labels) {
    if (l.size() != labels.front().size()) throw InputError("avg_adjacent_nonzero: mixed label lengths");
    words.push_back(l.bits());
  }
  std::sort(words.begin(), words.end());
  if (std::adjacent_find(words.begin(), words.end()) != words.end()) {
    throw InputError("avg_adjacent_nonzero: duplicate label");
  }
  return avg_adjacent_nonzero_words(words);
}

PermutationSpec::PermutationSpec(int n, std::vector<LabelPair> pairs) : n_(n), pairs_(std::move(pairs)) {
  check_width(n);
  std::unordered_set<Word> sources;
  std::unordered_set<Word> destinations;
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    const auto& p = pairs_[i];
    if (p.source.size() != n || p.destination.size() != n) {
      throw InputError("map[" + std::to_string(i) + "]: label length differs from n=" + std::to_string(n));
    }
    if (!sources.insert(p.source.bits()).second) {
      throw InputError("map[" + std::to_string(i) + "]: duplicate source " + p.source.str());
    }
    if (!destinations.insert(p.destination.bits()).second) {
      throw InputError("map[" + std::to_string(i) + "]: duplicate destination " + p.destination.str());
    }
  }
}

SparseState::SparseState(int n, std::vector<SparseEntry> entries) : n_(n), entries_(std::move(entries)) {
  check_width(n);
  if (entries_.empty()) throw InputError("amplitudes: state has no nonzero amplitude");
  std::sort(entries_.begin(), entries_.end(),
            [](const SparseEntry& a, const SparseEntry& b) { return a.label.bits() < b.label.bits(); });
  double norm = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.label.size() != n) throw InputError("amplitudes: label " + e.label.str() + " has wrong length");
    if (i > 0 && entries_[i - 1].label == e.label) throw InputError("amplitudes: duplicate label " + e.label.str());
    if (std::abs(e.amplitude) == 0.0) throw InputError("amplitudes: zero amplitude at " + e.label.str());
    norm += std::norm(e.amplitude);
  }
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw InputError("amplitudes: squared magnitudes sum to " + std::to_string(norm) + ", expected 1");
  }
}

std::vector<BitLabel> SparseState::labels() const {
  std::vector<BitLabel> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.label);
  return out;
}

std::vector<Word> SparseState::label_words() const {
  std::vector<Word> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.label.bits());
  return out;
}

int ceil_log2(std::uint64_t m) {
  if (m == 0) throw InputError("ceil_log2 of 0");
  int k = 0;
  while ((std::uint64_t{1} << k) < m) ++k;
  return k;
}

}  // namespace permweaver
