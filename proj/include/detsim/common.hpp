// Copyright 2026 The detsim Authors
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

#ifndef DETSIM_COMMON_HPP
#define DETSIM_COMMON_HPP

namespace detsim {

/// States and weight lists are renormalized on ingestion when their total
/// is within this tolerance of 1, rejected otherwise.
inline constexpr double kNormTolerance = 1e-9;

}  // namespace detsim

#endif
