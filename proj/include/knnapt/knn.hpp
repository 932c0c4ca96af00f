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
#include <span>
#include <string>
#include <vector>

#include "knnapt/common.hpp"
#include "knnapt/embedding.hpp"

namespace knnapt {

struct NeighborHit {
    std::string doc_id;
    float distance;  // in [0, 2]
    int rank;        // 1-based
};

struct QueryParams {
    int k = 3;
    float max_distance = 0.7f;  // in [0, 2]
    std::vector<std::string> exclude_ids;
};

/// Exact nearest-neighbor search: a flat row-major matrix of unit vectors
/// scanned linearly with cosine distance. Immutable after build; queries may
/// run concurrently and their results do not depend on scheduling — ties on
/// distance break by lexicographic doc id.
class FlatIndex {
 public:
    /// O(n) copy of the set. A row whose norm deviates from 1 by more than
    /// 1e-5 is fatal.
    static FlatIndex
    build(const EmbeddingSet& set, Source source);

    /// Up to k nearest rows with distance <= max_distance, excluding
    /// exclude_ids, sorted ascending by (distance, doc_id). Empty when
    /// nothing qualifies. The query vector must be unit norm and match dim.
    std::vector<NeighborHit>
    query(std::span<const float> query_vector, const QueryParams& params) const;

    size_t
    size() const {
        return ids_.size();
    }

    int
    dim() const {
        return dim_;
    }

    Source
    source() const {
        return source_;
    }

    const std::string&
    id_at(size_t row) const {
        return ids_[row];
    }

    /// Embedding file format plus a trailing "SOURCE <tag>" line.
    void
    dump(const std::filesystem::path& path) const;

    static FlatIndex
    load(const std::filesystem::path& path);

 private:
    FlatIndex() = default;

    int dim_ = 0;
    Source source_ = Source::kInDomain;
    std::vector<std::string> ids_;
    std::vector<float> matrix_;  // row-major, size() * dim_
};

}  // namespace knnapt
