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

#include <nlohmann/json.hpp>
#include <string>

#include "permweaver/core.hpp"

namespace permweaver::io {

// Permutation spec: {"n": int, "map": [["<src>", "<dst>"], ...]}
// Sparse state:     {"n": int, "amplitudes": {"<bitstring>": [re, im], ...}}
// Malformed documents raise InputError naming the offending field.

PermutationSpec spec_from_json(const nlohmann::json& doc);
nlohmann::json spec_to_json(const PermutationSpec& spec);

SparseState state_from_json(const nlohmann::json& doc);
nlohmann::json state_to_json(const SparseState& state);

/// Reads and parses a JSON file; InputError on I/O or syntax failure.
nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace permweaver::io
