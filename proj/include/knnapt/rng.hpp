// Copyright (C) 2026 The knnapt authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except in compliance
// with the License. You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under the License.

#pragma once

#include <cstdint>
#include <string_view>

#include "knnapt/common.hpp"
#include "knnapt/hashing.hpp"

namespace knnapt {

// splitmix64. Chosen over std::mt19937 + std distributions because the
// standard distributions are implementation-defined; output bytes must not
// depend on the standard library in use.
class SplitMix64 {
 public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t
    next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    // [0, 1), 53 bits of precision
    double
    next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // [0, n). Plain modulo: bias is ~n/2^64 and irrelevant here; what matters
    // is that the mapping is platform-independent.
    uint64_t
    next_below(uint64_t n) {
        return next_u64() % n;
    }

 private:
    uint64_t state_;
};

/// Independent stream per (root seed, record id, source, variation). Streams
/// only depend on the key, never on processing order, so parallel masking is
/// reproducible.
inline SplitMix64
derive_stream(uint64_t root_seed, std::string_view record_id, Source source, uint32_t variation_index) {
    uint64_t h = fnv1a64(record_id, root_seed);
    h = mix64(h ^ ((static_cast<uint64_t>(source) + 1) * 0x9e3779b97f4a7c15ULL));
    h = mix64(h ^ variation_index);
    return SplitMix64(h);
}

}  // namespace knnapt
