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

#include "permweaver/io.hpp"

#include <fstream>
#include <sstream>

namespace permweaver::io {

using nlohmann::json;

namespace {

int read_n(const json& doc) {
  if (!doc.is_object()) throw InputError("document: expected a JSON object");
  if (!doc.contains("n")) throw InputError("n: missing field");
  const auto& n = doc.at("n");
  if (!n.is_number_integer()) throw InputError("n: expected an integer");
  const auto value = n.get<long long>();
  if (value < 1 || value > kMaxQubits) throw InputError("n: value out of range");
  return static_cast<int>(value);
}

BitLabel read_label(const json& v, const std::string& field, int n) {
  if (!v.is_string()) throw InputError(field + ": expected a bitstring");
  BitLabel label;
  try {
    label = BitLabel::parse(v.get<std::string>());
  } catch (const InputError& e) {
    throw InputError(field + ": " + e.what());
  }
  if (label.size() != n) throw InputError(field + ": length differs from n");
  return label;
}

}  // namespace

PermutationSpec spec_from_json(const json& doc) {
  const int n = read_n(doc);
  if (!doc.contains("map")) throw InputError("map: missing field");
  const auto& map = doc.at("map");
  if (!map.is_array()) throw InputError("map: expected an array of [src, dst] pairs");
  std::vector<LabelPair> pairs;
  pairs.reserve(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    const std::string field = "map[" + std::to_string(i) + "]";
    const auto& entry = map[i];
    if (!entry.is_array() || entry.size() != 2) throw InputError(field + ": expected [src, dst]");
    pairs.push_back({read_label(entry[0], field + "[0]", n), read_label(entry[1], field + "[1]", n)});
  }
  return PermutationSpec(n, std::move(pairs));
}

json spec_to_json(const PermutationSpec& spec) {
  json map = json::array();
  for (const auto& p : spec.pairs()) map.push_back({p.source.str(), p.destination.str()});
  return {{"n", spec.num_qubits()}, {"map", map}};
}

SparseState state_from_json(const json& doc) {
  const int n = read_n(doc);
  if (!doc.contains("amplitudes")) throw InputError("amplitudes: missing field");
  const auto& amps = doc.at("amplitudes");
  if (!amps.is_object()) throw InputError("amplitudes: expected an object keyed by bitstring");
  std::vector<SparseEntry> entries;
  for (const auto& [key, value] : amps.items()) {
    const std::string field = "amplitudes[\"" + key + "\"]";
    const BitLabel label = read_label(json(key), field, n);
    if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number()) {
      throw InputError(field + ": expected [re, im]");
    }
    entries.push_back({label, Amplitude(value[0].get<double>(), value[1].get<double>())});
  }
  return SparseState(n, std::move(entries));
}

json state_to_json(const SparseState& state) {
  json amps = json::object();
  for (const auto& e : state.entries()) amps[e.label.str()] = {e.amplitude.real(), e.amplitude.imag()};
  return {{"n", state.num_qubits()}, {"amplitudes", amps}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": invalid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot open file for writing");
  out << text;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace permweaver::io
