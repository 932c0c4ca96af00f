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

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "knnapt/common.hpp"

namespace knnapt {

class Vocab;
struct TokenizerConfig;

struct Document {
    std::string id;
    Source source;
    std::string text;  // NFC, LF newlines, trimmed
};

/// Immutable after construction; iteration order is input-file order.
/// Safe to share across threads.
class Corpus {
 public:
    Corpus() = default;

    /// Validates id uniqueness/non-emptiness and non-empty texts.
    static Corpus
    from_documents(Source role, std::vector<Document> documents);

    Source
    role() const {
        return role_;
    }

    size_t
    count() const {
        return documents_.size();
    }

    const std::vector<Document>&
    documents() const {
        return documents_;
    }

    const Document&
    at(size_t i) const {
        return documents_[i];
    }

    std::optional<size_t>
    index_of(std::string_view id) const;

    const Document&
    by_id(std::string_view id) const;

 private:
    Source role_ = Source::kTarget;
    std::vector<Document> documents_;
    std::unordered_map<std::string_view, size_t> index_;  // views into documents_
};

enum class CorpusFormat { kRawLines, kJsonLines };

CorpusFormat
parse_corpus_format(std::string_view s);  // "text" | "jsonl"

struct RejectedLine {
    size_t line_number;  // 1-based, as editors report them
    std::string reason;
};

struct IngestResult {
    Corpus corpus;
    std::vector<RejectedLine> rejects;
    size_t input_lines = 0;
};

/// Line-delimited ingest. Raw mode: one text per line. JSONL mode: objects
/// with "text" and optional "id". Text is NFC-normalized, newline-normalized
/// and trimmed; empty-after-trim records are rejected, not fatal. Missing ids
/// are assigned `<ROLE>-<index>` from the 0-based file line index. Duplicate
/// explicit ids and unreadable files are fatal.
IngestResult
ingest(const std::filesystem::path& path, Source role, CorpusFormat format);

/// Canonical corpus serialization: one {"id","source","text"} object per
/// line. Ingesting the same input twice yields byte-identical files.
void
write_corpus(const Corpus& corpus, const std::filesystem::path& path);

Corpus
read_corpus(const std::filesystem::path& path);

void
write_rejects(const std::vector<RejectedLine>& rejects, const std::filesystem::path& path);

// Token-count histogram bucket upper bounds (exclusive); last bucket is open.
inline constexpr std::array<size_t, 8> kTokenHistEdges = {8, 16, 32, 64, 128, 256, 512, 1024};

struct CorpusStats {
    size_t doc_count = 0;
    size_t total_bytes = 0;  // UTF-8 text bytes
    size_t total_tokens = 0;
    std::array<size_t, kTokenHistEdges.size() + 1> token_hist{};
    size_t duplicate_texts = 0;  // docs whose exact text was already seen
};

/// Errors on an empty corpus.
CorpusStats
stats(const Corpus& corpus, const Vocab& vocab, const TokenizerConfig& config);

}  // namespace knnapt
