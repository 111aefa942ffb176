// Copyright 2026 The aqored Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AQORED_MODEL_IO_HPP
#define AQORED_MODEL_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

#include "aqored/models.hpp"

namespace aqored {

/// Flat key = value configuration. '#' starts a comment, blank lines are ignored.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::istream& in);
KeyValues read_key_values(const std::string& path);
std::string format_key_values(const KeyValues& kv);

/// Builds a ModelSpec from the model keys:
///   model         grover | noisy-standard | noisy-grover | tunneling | multi-solution | mlevel
///   n             qubit count
///   driver        grover | standard (model=grover)
///   epsilon, q    noise strength and target Hamming weight (noisy models)
///   target_scale  1 | n | positive number
///   barriers      comma-separated reals (tunneling); drawn uniformly in [0, 1) from seed if absent
///   targets       comma-separated bit strings (multi-solution); p random targets from seed if absent
///   p             number of random targets (default 2)
///   energies, degeneracies  comma-separated lists (mlevel)
ModelSpec model_from_key_values(const KeyValues& kv, std::uint64_t seed = 0);
KeyValues model_to_key_values(const ModelSpec& spec);

/// Comma-separated list helpers; empty entries are rejected.
std::vector<double> parse_real_list(const std::string& text);
std::vector<std::string> parse_string_list(const std::string& text);

}  // namespace aqored

#endif  // AQORED_MODEL_IO_HPP
