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

#ifndef DETSIM_DIGEST_HPP
#define DETSIM_DIGEST_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace detsim {

// FNV-1a, 64 bit. Content digests only; not cryptographic.
class Fnv1a {
  public:
    void update(std::string_view bytes) {
        for (unsigned char c : bytes) {
            hash_ ^= static_cast<std::uint64_t>(c);
            hash_ *= 1099511628211ULL;
        }
    }
    std::uint64_t value() const { return hash_; }
    std::string hex() const;

  private:
    std::uint64_t hash_ = 1469598103934665603ULL;
};

std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

/// Shortest decimal form that round-trips the double exactly ("%.17g").
std::string format_full(double value);

}  // namespace detsim

#endif
