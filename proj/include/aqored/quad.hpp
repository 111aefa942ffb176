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

#ifndef AQORED_QUAD_HPP
#define AQORED_QUAD_HPP

#include <boost/multiprecision/float128.hpp>

namespace aqored {

/// IEEE binary128, used where the location of an avoided crossing in s is
/// finer than double resolution.
using quad = boost::multiprecision::float128;

}  // namespace aqored

#endif  // AQORED_QUAD_HPP
