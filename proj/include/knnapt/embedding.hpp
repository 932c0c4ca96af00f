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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "knnapt/common.hpp"
#include "knnapt/corpus.hpp"

namespace knnapt {

struct EmbedderConfig {
    int dim = 384;     // >= 8
    int ngram_min = 3;  // 1 <= min <= max
    int ngram_max = 5;
    uint64_t seed = 0;
};

void
validate(const EmbedderConfig& config);

struct EmbeddingRecord {
    std::string doc_id;
    std::vector<float> vector;  // unit L2 norm within 1e-5
};

/// One record per document id, all the same dimension.
class EmbeddingSet {
 public:
    explicit EmbeddingSet(int dim) : dim_(dim) {}

    int
    dim() const {
        return dim_;
    }

    size_t
    count() const {
        return records_.size();
    }

    const std::vector<EmbeddingRecord>&
    records() const {
        return records_;
    }

    const EmbeddingRecord&
    at(size_t i) const {
        return records_[i];
    }

    /// Enforces the dimension and id uniqueness.
    void
    add(EmbeddingRecord record);

    const EmbeddingRecord*
    find(std::string_view doc_id) const;

 private:
    int dim_;
    std::vector<EmbeddingRecord> records_;
    std::unordered_map<std::string_view, size_t> index_;
};

/// 1 - dot, clamped to [0, 2]. Only meaningful on unit vectors, which is the
/// invariant every producer in this codebase maintains.
float
cosine_distance(std::span<const float> a, std::span<const float> b);

/// Deterministic stand-in for a neural sentence encoder: signed feature
/// hashing of character n-grams. Per document, for each n in
/// [ngram_min, ngram_max] and each code point window of length n:
///   bucket = mix64(fnv1a64(window_bytes, seed)) % dim
///   sign   = mix64(fnv1a64(window_bytes, seed ^ kSignSalt)) & 1 ? +1 : -1
/// accumulated in double (TF weighting), then L2-normalized and stored as
/// float32. An all-zero raw vector (text shorter than ngram_min) becomes the
/// unit basis vector e0 with a warning on stderr. Same bytes in, same floats
/// out, on every platform.
inline constexpr uint64_t kSignSalt = 0x5851f42d4c957f2dULL;

EmbeddingSet
embed_builtin(const Corpus& corpus, const EmbedderConfig& config, int threads = 1);

/// Embeds one standalone text with the builtin scheme (query-side helper).
std::vector<float>
embed_text(std::string_view text, const EmbedderConfig& config);

/// Binary format: header "EMB1 <count> <dim>\n", then per record the id line
/// followed by dim little-endian float32 values. Bit-exact round trip.
void
export_embeddings(const EmbeddingSet& set, const std::filesystem::path& path);

/// Ids must cover the corpus exactly. Norm handling: |norm-1| <= 1e-6 keeps
/// the stored floats untouched; drift up to 1e-3 is renormalized; beyond
/// that is an error, as are non-finite values.
EmbeddingSet
import_embeddings(const std::filesystem::path& path, const Corpus& corpus,
                  std::optional<int> expected_dim = std::nullopt);

}  // namespace knnapt
