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

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "knnapt/common.hpp"
#include "knnapt/corpus.hpp"
#include "knnapt/knn.hpp"
#include "knnapt/tokenizer.hpp"

namespace knnapt {

struct AugmentConfig {
    int k = 3;
    float max_distance = 0.7f;
    int token_budget = 512;  // must equal TokenizerConfig.max_len
    std::vector<Source> sources{Source::kInDomain, Source::kDomainRelated};
    bool exclude_self = true;  // drop a neighbor whose id equals the seed id
};

/// One seed x one source. Seed text always comes first in the packed
/// sequence; neighbors follow in ascending distance. fallback is true iff
/// retrieval returned nothing, in which case the packed sequence holds the
/// seed alone.
struct AugmentedRecord {
    std::string seed_id;
    Source source;
    std::vector<std::string> neighbor_ids;
    std::vector<float> neighbor_distances;  // ascending, all <= max_distance
    TokenSeq packed;                        // exactly token_budget long
    bool fallback = false;
    std::string augmented_text;  // seed + neighbor raw texts, "\n"-joined
};

struct SourceData {
    const FlatIndex* index;
    const Corpus* corpus;
};

AugmentedRecord
augment(const Document& seed, std::span<const float> seed_vector, const FlatIndex& index, const Corpus& source_corpus,
        const Vocab& vocab, const TokenizerConfig& tok_config, const AugmentConfig& config);

/// Exactly |target| x |config.sources| records, ordered by (seed index,
/// source position). Each configured source needs an index built over the
/// same embedding space as target_embeddings.
std::vector<AugmentedRecord>
augment_corpus(const Corpus& target, const EmbeddingSet& target_embeddings, const std::map<Source, SourceData>& sources,
               const Vocab& vocab, const TokenizerConfig& tok_config, const AugmentConfig& config, int threads = 1);

/// Audit dump: {seed_id, source, neighbor_ids, distances, fallback} per line.
void
write_audit(std::span<const AugmentedRecord> records, const std::filesystem::path& path);

/// Full record serialization (audit fields + packed ids + augmented text);
/// the dataset stage consumes this file.
void
write_augmented(std::span<const AugmentedRecord> records, const std::filesystem::path& path);

std::vector<AugmentedRecord>
read_augmented(const std::filesystem::path& path, const Vocab& vocab);

}  // namespace knnapt
