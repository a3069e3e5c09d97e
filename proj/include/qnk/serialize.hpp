// Copyright 2026 The qnksim Authors
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

#include <string>

#include <json.hpp>

#include "qnk/attacks.hpp"
#include "qnk/engine.hpp"
#include "qnk/state.hpp"

namespace qnk::cli {

using Json = nlohmann::ordered_json;

/// States above this many qubits are written as a digest unless full output is requested.
inline constexpr std::size_t kMaxInlineQubits = 6;

/// FNV-1a 64 over the layout and the amplitudes printed to 12 significant digits.
std::string state_digest(const QState& s);

/// {"layout", "form", "amplitudes" | "density"} with complex numbers as [re, im],
/// or {"layout", "form", "digest"}.
Json state_to_json(const QState& s, bool full_states);

Json transcript_to_json(const engine::Transcript& t, bool full_states);

Json report_to_json(const attacks::AttackReport& r);

}  // namespace qnk::cli
