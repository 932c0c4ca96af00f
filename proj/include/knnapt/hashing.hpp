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
#include <filesystem>
#include <string_view>

namespace knnapt {

// Seeded FNV-1a (64-bit). The seed perturbs the offset basis; byte-for-byte
// identical results on every platform.
inline uint64_t
fnv1a64(std::string_view bytes, uint64_t seed = 0) {
    uint64_t h = 0xcbf29ce484222325ULL ^ seed;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// splitmix64 finalizer; full-avalanche mix for bucketing and stream keying.
inline uint64_t
mix64(uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

/// Streaming FNV-1a over a file's bytes. Used for stage-cache keys.
uint64_t
hash_file(const std::filesystem::path& path);

}  // namespace knnapt
