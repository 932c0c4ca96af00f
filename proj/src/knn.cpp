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

#include "knnapt/knn.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <unordered_set>

namespace knnapt {

FlatIndex
FlatIndex::build(const EmbeddingSet& set, Source source) {
    if (set.count() == 0) {
        throw ValidationError("cannot build an index over an empty embedding set");
    }
    FlatIndex index;
    index.dim_ = set.dim();
    index.source_ = source;
    index.ids_.reserve(set.count());
    index.matrix_.reserve(set.count() * static_cast<size_t>(set.dim()));
    for (const EmbeddingRecord& rec : set.records()) {
        double norm_sq = 0.0;
        for (float v : rec.vector) {
            norm_sq += static_cast<double>(v) * static_cast<double>(v);
        }
        if (std::abs(std::sqrt(norm_sq) - 1.0) > 1e-5) {
            throw ValidationError(
                fmt::format("vector for '{}' is not unit norm (|v| = {:.6f})", rec.doc_id, std::sqrt(norm_sq)));
        }
        index.ids_.push_back(rec.doc_id);
        index.matrix_.insert(index.matrix_.end(), rec.vector.begin(), rec.vector.end());
    }
    return index;
}

std::vector<NeighborHit>
FlatIndex::query(std::span<const float> query_vector, const QueryParams& params) const {
    if (static_cast<int>(query_vector.size()) != dim_) {
        throw ValidationError(
            fmt::format("query dim {} does not match index dim {}", query_vector.size(), dim_));
    }
    if (params.k < 1) {
        throw ValidationError(fmt::format("k must be >= 1, got {}", params.k));
    }
    if (params.max_distance < 0.0f || params.max_distance > 2.0f) {
        throw ValidationError(fmt::format("max_distance must lie in [0, 2], got {}", params.max_distance));
    }
    double qnorm_sq = 0.0;
    for (float v : query_vector) {
        qnorm_sq += static_cast<double>(v) * static_cast<double>(v);
    }
    if (std::abs(std::sqrt(qnorm_sq) - 1.0) > 1e-5) {
        throw ValidationError("query vector is not unit norm");
    }

    std::unordered_set<std::string_view> excluded;
    excluded.reserve(params.exclude_ids.size());
    for (const std::string& id : params.exclude_ids) {
        excluded.insert(id);
    }

    // Candidate rows ordered worst-first so the heap top is the one to evict.
    const auto worse = [&](size_t a, size_t b, float da, float db) {
        if (da != db) {
            return da > db;
        }
        return ids_[a] > ids_[b];
    };
    std::vector<std::pair<float, size_t>> heap;  // (distance, row), max-heap by worse
    const auto heap_cmp = [&](const std::pair<float, size_t>& a, const std::pair<float, size_t>& b) {
        return !worse(a.second, b.second, a.first, b.first);
    };

    const size_t k = static_cast<size_t>(params.k);
    const size_t n = ids_.size();
    for (size_t row = 0; row < n; ++row) {
        if (!excluded.empty() && excluded.contains(ids_[row])) {
            continue;
        }
        const float* v = matrix_.data() + row * static_cast<size_t>(dim_);
        float dot = 0.0f;
        for (int d = 0; d < dim_; ++d) {
            dot += v[d] * query_vector[d];
        }
        float dist = 1.0f - dot;
        dist = dist < 0.0f ? 0.0f : (dist > 2.0f ? 2.0f : dist);
        if (dist > params.max_distance) {
            continue;
        }
        if (heap.size() < k) {
            heap.emplace_back(dist, row);
            std::push_heap(heap.begin(), heap.end(), heap_cmp);
        } else if (worse(heap.front().second, row, heap.front().first, dist)) {
            std::pop_heap(heap.begin(), heap.end(), heap_cmp);
            heap.back() = {dist, row};
            std::push_heap(heap.begin(), heap.end(), heap_cmp);
        }
    }

    std::sort(heap.begin(), heap.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) {
            return a.first < b.first;
        }
        return ids_[a.second] < ids_[b.second];
    });
    std::vector<NeighborHit> hits;
    hits.reserve(heap.size());
    for (size_t i = 0; i < heap.size(); ++i) {
        hits.push_back({ids_[heap[i].second], heap[i].first, static_cast<int>(i) + 1});
    }
    return hits;
}

void
FlatIndex::dump(const std::filesystem::path& path) const {
    EmbeddingSet set(dim_);
    for (size_t row = 0; row < ids_.size(); ++row) {
        const float* v = matrix_.data() + row * static_cast<size_t>(dim_);
        set.add({ids_[row], std::vector<float>(v, v + dim_)});
    }
    export_embeddings(set, path);
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) {
        throw IoError("cannot append source tag to index dump: " + path.string());
    }
    out << "SOURCE " << to_string(source_) << '\n';
}

FlatIndex
FlatIndex::load(const std::filesystem::path& path) {
    // Reuse the embedding reader, then pick up the trailing source tag.
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open index dump: " + path.string());
    }
    std::string magic;
    size_t count = 0;
    int dim = 0;
    in >> magic >> count >> dim;
    in.ignore(1, '\n');
    if (!in || magic != "EMB1" || dim <= 0) {
        throw IoError("malformed index dump header in " + path.string());
    }
    FlatIndex index;
    index.dim_ = dim;
    index.ids_.reserve(count);
    index.matrix_.reserve(count * static_cast<size_t>(dim));
    std::string id;
    std::vector<char> raw(static_cast<size_t>(dim) * 4);
    for (size_t r = 0; r < count; ++r) {
        if (!std::getline(in, id)) {
            throw IoError("truncated index dump: " + path.string());
        }
        in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
        if (!in) {
            throw IoError("truncated index dump: " + path.string());
        }
        index.ids_.push_back(id);
        for (int d = 0; d < dim; ++d) {
            const auto* b = reinterpret_cast<const unsigned char*>(raw.data() + d * 4);
            const uint32_t bits = static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
                                  (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
            float f;
            static_assert(sizeof(f) == 4);
            std::memcpy(&f, &bits, 4);
            index.matrix_.push_back(f);
        }
    }
    std::string tag_line;
    if (!std::getline(in, tag_line) || !tag_line.starts_with("SOURCE ")) {
        throw IoError("index dump is missing the SOURCE tag line: " + path.string());
    }
    index.source_ = parse_source(tag_line.substr(7));
    return index;
}

}  // namespace knnapt
