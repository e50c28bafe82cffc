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

#include "permweaver/qasm.hpp"

#include <cctype>
#include <cstdlib>
#include <string>
#include <vector>

#include "permweaver/errors.hpp"

namespace permweaver {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

class LineError {
 public:
  explicit LineError(int line) : line_(line) {}
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("qasm line " + std::to_string(line_) + ": " + what);
  }

 private:
  int line_;
};

// Parses "q[3]" and returns 3.
int parse_wire(const std::string& tok, const LineError& err) {
  const std::string t = trim(tok);
  if (t.size() < 4 || t.compare(0, 2, "q[") != 0 || t.back() != ']') err.fail("expected q[<index>], got '" + t + "'");
  const std::string digits = t.substr(2, t.size() - 3);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) err.fail("bad wire index '" + t + "'");
  return std::stoi(digits);
}

std::vector<int> parse_wires(const std::string& list, const LineError& err) {
  std::vector<int> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = list.find(',', start);
    out.push_back(parse_wire(list.substr(start, comma - start), err));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_angle(const std::string& text, const LineError& err) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size()) err.fail("angle '" + t + "' is not a number");
  return v;
}

}  // namespace

Circuit parse_qasm(std::string_view text, std::optional<int> num_main) {
  std::optional<Circuit> circuit;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string line(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const LineError err(line_no);

    if (const std::size_t c = line.find("//"); c != std::string::npos) line.resize(c);
    line = trim(line);
    if (line.empty()) continue;
    if (line.back() != ';') err.fail("missing ';'");
    line = trim(std::string_view(line).substr(0, line.size() - 1));
    if (line.rfind("OPENQASM", 0) == 0 || line.rfind("include", 0) == 0) continue;

    if (line.rfind("qreg", 0) == 0) {
      if (circuit) err.fail("only one qreg is supported");
      const std::string reg = trim(std::string_view(line).substr(4));
      const int width = parse_wire(reg, err);
      if (num_main) {
        if (width == *num_main) {
          circuit.emplace(*num_main, false);
        } else if (width == *num_main + 1) {
          circuit.emplace(*num_main, true);
        } else {
          err.fail("register has " + std::to_string(width) + " wires, expected " + std::to_string(*num_main) +
                   " or " + std::to_string(*num_main + 1));
        }
      } else {
        circuit.emplace(width, false);
      }
      continue;
    }
    if (!circuit) err.fail("gate before qreg");

    const std::size_t space = line.find_first_of(" \t");
    if (space == std::string::npos) err.fail("missing operands");
    std::string head = line.substr(0, space);
    const std::vector<int> wires = parse_wires(line.substr(space + 1), err);

    std::string arg;
    if (const std::size_t open = head.find('('); open != std::string::npos) {
      if (head.back() != ')') err.fail("unbalanced parenthesis");
      arg = head.substr(open + 1, head.size() - open - 2);
      head.resize(open);
    }

    auto expect_wires = [&](std::size_t k) {
      if (wires.size() != k) err.fail(head + " takes " + std::to_string(k) + " operand(s)");
    };
    auto expect_no_arg = [&] {
      if (!arg.empty()) err.fail(head + " takes no parameter");
    };
    try {
      if (head == "x" || head == "h" || head == "t" || head == "tdg") {
        expect_wires(1);
        expect_no_arg();
        const GateKind k = head == "x" ? GateKind::X : head == "h" ? GateKind::H : head == "t" ? GateKind::T : GateKind::Tdg;
        circuit->add({k, wires[0], {}, 0.0});
      } else if (head == "ry" || head == "rz") {
        expect_wires(1);
        circuit->add({head == "ry" ? GateKind::RY : GateKind::RZ, wires[0], {}, parse_angle(arg, err)});
      } else if (head == "cx") {
        expect_wires(2);
        expect_no_arg();
        circuit->cx(wires[0], wires[1]);
      } else if (head == "mcx") {
        if (arg.find_first_not_of("01") != std::string::npos) err.fail("mcx polarities must be 0/1");
        expect_wires(arg.size() + 1);
        std::vector<Control> ctl;
        for (std::size_t i = 0; i < arg.size(); ++i) ctl.push_back({wires[i], arg[i] == '1'});
        circuit->mcx(std::move(ctl), wires.back());
      } else {
        err.fail("unsupported gate '" + head + "'");
      }
    } catch (const InputError& e) {
      const std::string what = e.what();
      if (what.rfind("qasm line", 0) == 0) throw;
      err.fail(what);
    }
  }
  if (!circuit) throw InputError("qasm: no qreg declaration");
  return std::move(*circuit);
}

}  // namespace permweaver
