// Copyright 2026 The atlkd Authors
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

#include <stdexcept>
#include <string>
#include <vector>

#include "atlkd/formula.hpp"

namespace atlkd {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, std::string message,
             std::vector<std::string> expected);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

/// Parses one formula in the concrete ASCII grammar:
///
///   atoms        [a-z_][A-Za-z0-9_]*   ("_"-prefixed names are reserved for
///                                       translator-generated atoms)
///   booleans     true false ! & | -> <->
///   knowledge    K{1,2} phi   P{1,2} phi   K{} phi
///   cooperation  <<1,2>> X phi   <<1,2>> (phi U psi)   <<1,2>> (phi W psi)
///                <<1,2>> F phi   <<1,2>> G phi         (dual: [[1,2]] ...)
///   ctl          E X phi   A X phi   E (phi U psi)   A (phi U psi)
///                E F / A F / E G / A G phi            (also E/A (phi W psi))
///
/// Unary connectives bind strongest; & > | > -> > <->; the parentheses of the
/// binary modalities are mandatory. Derived operators expand to the core
/// constructors, so e.g. "<<1>> F p" parses as <<1>> (true U p).
///
/// `line` seeds error positions when parsing a line taken from a larger file.
Formula parse_formula(const std::string& text, int line = 1);

}  // namespace atlkd
