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

#include "knnapt/embedding.hpp"

#include <fmt/format.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>

#include "knnapt/hashing.hpp"
#include "knnapt/parallel.hpp"
#include "knnapt/text.hpp"

namespace knnapt {

void
validate(const EmbedderConfig& config) {
    if (config.dim < 8) {
        throw ValidationError(fmt::format("embedding dim must be >= 8, got {}", config.dim));
    }
    if (config.ngram_min < 1 || config.ngram_min > config.ngram_max) {
        throw ValidationError(
            fmt::format("invalid n-gram range [{}, {}]", config.ngram_min, config.ngram_max));
    }
}

void
EmbeddingSet::add(EmbeddingRecord record) {
    if (static_cast<int>(record.vector.size()) != dim_) {
        throw ValidationError(fmt::format("embedding for '{}' has dim {}, set dim is {}", record.doc_id,
                                          record.vector.size(), dim_));
    }
    records_.push_back(std::move(record));
    auto [it, inserted] = index_.emplace(std::string_view(records_.back().doc_id), records_.size() - 1);
    (void)it;
    if (!inserted) {
        records_.pop_back();
        throw ValidationError("duplicate embedding id");
    }
}

const EmbeddingRecord*
EmbeddingSet::find(std::string_view doc_id) const {
    auto it = index_.find(doc_id);
    return it == index_.end() ? nullptr : &records_[it->second];
}

float
cosine_distance(std::span<const float> a, std::span<const float> b) {
    if (a.size() != b.size()) {
        throw ValidationError(fmt::format("dimension mismatch: {} vs {}", a.size(), b.size()));
    }
    float dot = 0.0f;
    for (size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
    }
    const float d = 1.0f - dot;
    return d < 0.0f ? 0.0f : (d > 2.0f ? 2.0f : d);
}

std::vector<float>
embed_text(std::string_view text, const EmbedderConfig& config) {
    validate(config);
    const size_t dim = static_cast<size_t>(config.dim);
    std::vector<double> acc(dim, 0.0);

    const std::vector<size_t> offsets = codepoint_offsets(text);
    const size_t cp_len = offsets.size() - 1;
    for (int n = config.ngram_min; n <= config.ngram_max; ++n) {
        if (cp_len < static_cast<size_t>(n)) {
            break;
        }
        for (size_t s = 0; s + static_cast<size_t>(n) <= cp_len; ++s) {
            const std::string_view gram = text.substr(offsets[s], offsets[s + n] - offsets[s]);
            const uint64_t bucket_hash = mix64(fnv1a64(gram, config.seed));
            const uint64_t sign_hash = mix64(fnv1a64(gram, config.seed ^ kSignSalt));
            acc[bucket_hash % dim] += (sign_hash & 1) ? 1.0 : -1.0;
        }
    }

    double norm_sq = 0.0;
    for (double v : acc) {
        norm_sq += v * v;
    }
    std::vector<float> out(dim, 0.0f);
    if (norm_sq == 0.0) {
        out[0] = 1.0f;  // deterministic basis-vector fallback
        std::cerr << "warning: text produced no n-gram features; using e0 fallback\n";
        return out;
    }
    const double norm = std::sqrt(norm_sq);
    for (size_t i = 0; i < dim; ++i) {
        out[i] = static_cast<float>(acc[i] / norm);
    }
    return out;
}

EmbeddingSet
embed_builtin(const Corpus& corpus, const EmbedderConfig& config, int threads) {
    validate(config);
    if (corpus.count() == 0) {
        throw ValidationError("cannot embed an empty corpus");
    }
    std::vector<std::vector<float>> vectors(corpus.count());
    parallel_for(corpus.count(), threads, [&](size_t i) { vectors[i] = embed_text(corpus.at(i).text, config); });

    EmbeddingSet set(config.dim);
    for (size_t i = 0; i < corpus.count(); ++i) {
        set.add({corpus.at(i).id, std::move(vectors[i])});
    }
    return set;
}

namespace {

void
write_le_f32(std::ostream& out, float value) {
    const uint32_t bits = std::bit_cast<uint32_t>(value);
    const char bytes[4] = {
        static_cast<char>(bits & 0xff),
        static_cast<char>((bits >> 8) & 0xff),
        static_cast<char>((bits >> 16) & 0xff),
        static_cast<char>((bits >> 24) & 0xff),
    };
    out.write(bytes, 4);
}

float
read_le_f32(std::istream& in) {
    unsigned char bytes[4];
    in.read(reinterpret_cast<char*>(bytes), 4);
    const uint32_t bits = static_cast<uint32_t>(bytes[0]) | (static_cast<uint32_t>(bytes[1]) << 8) |
                          (static_cast<uint32_t>(bytes[2]) << 16) | (static_cast<uint32_t>(bytes[3]) << 24);
    return std::bit_cast<float>(bits);
}

}  // namespace

void
export_embeddings(const EmbeddingSet& set, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write embedding file: " + path.string());
    }
    out << "EMB1 " << set.count() << ' ' << set.dim() << '\n';
    for (const EmbeddingRecord& rec : set.records()) {
        out << rec.doc_id << '\n';
        for (float v : rec.vector) {
            write_le_f32(out, v);
        }
    }
    if (!out) {
        throw IoError("write error on embedding file: " + path.string());
    }
}

EmbeddingSet
import_embeddings(const std::filesystem::path& path, const Corpus& corpus, std::optional<int> expected_dim) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open embedding file: " + path.string());
    }
    std::string magic;
    size_t count = 0;
    int dim = 0;
    in >> magic >> count >> dim;
    in.ignore(1, '\n');
    if (!in || magic != "EMB1" || dim <= 0) {
        throw IoError("malformed embedding header in " + path.string());
    }
    if (expected_dim && dim != *expected_dim) {
        throw ValidationError(fmt::format("embedding dim {} does not match expected {}", dim, *expected_dim));
    }

    EmbeddingSet set(dim);
    std::string id;
    for (size_t r = 0; r < count; ++r) {
        if (!std::getline(in, id)) {
            throw IoError(fmt::format("truncated embedding file {} (record {})", path.string(), r));
        }
        std::vector<float> vec(static_cast<size_t>(dim));
        double norm_sq = 0.0;
        for (auto& v : vec) {
            v = read_le_f32(in);
            if (!std::isfinite(v)) {
                throw ValidationError(fmt::format("non-finite value in embedding for '{}'", id));
            }
            norm_sq += static_cast<double>(v) * static_cast<double>(v);
        }
        if (!in) {
            throw IoError(fmt::format("truncated embedding file {} (record {})", path.string(), r));
        }
        const double norm = std::sqrt(norm_sq);
        const double drift = std::abs(norm - 1.0);
        if (drift > 1e-3) {
            throw ValidationError(fmt::format("norm drift exceeds tolerance for '{}': |v| = {:.6f}", id, norm));
        }
        if (drift > 1e-6) {
            for (auto& v : vec) {
                v = static_cast<float>(static_cast<double>(v) / norm);
            }
        }
        set.add({id, std::move(vec)});
    }

    if (set.count() != corpus.count()) {
        throw ValidationError(fmt::format("embedding file has {} records, corpus has {} documents", set.count(),
                                          corpus.count()));
    }
    for (const Document& doc : corpus.documents()) {
        if (set.find(doc.id) == nullptr) {
            throw ValidationError(fmt::format("embedding file is missing document '{}'", doc.id));
        }
    }
    return set;
}

}  // namespace knnapt
