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

#include <string>

#include "atlkd/formula.hpp"

namespace atlkd {

/// Renders a formula in the concrete grammar with minimal parentheses.
/// Expanded sugar is folded back (e.g. the expansion of "p & q" prints as
/// "p & q" again), so render/parse round-trips: parse(render(f)) == f for
/// every formula, and render(parse(s)) == s for canonically rendered s.
std::string render(const Formula& f);

}  // namespace atlkd
