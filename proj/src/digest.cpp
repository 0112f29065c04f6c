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

#include "detsim/digest.hpp"

#include <cstdio>

namespace detsim {

std::string Fnv1a::hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash_));
    return std::string(buf);
}

std::uint64_t fnv1a64(std::string_view bytes) {
    Fnv1a h;
    h.update(bytes);
    return h.value();
}

std::string fnv1a64_hex(std::string_view bytes) {
    Fnv1a h;
    h.update(bytes);
    return h.hex();
}

std::string format_full(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return std::string(buf);
}

}  // namespace detsim
