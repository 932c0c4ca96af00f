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

#include "knnapt/corpus.hpp"

#include <fmt/format.h>

#include <fstream>
#include <unordered_set>

#include "json.hpp"
#include "knnapt/text.hpp"
#include "knnapt/tokenizer.hpp"

namespace knnapt {

namespace {

bool
has_control_chars(std::string_view id) {
    for (unsigned char c : id) {
        if (c < 0x20 || c == 0x7f) {
            return true;
        }
    }
    return false;
}

std::string
auto_id(Source role, size_t line_index) {
    return fmt::format("{}-{:08d}", to_string(role), line_index);
}

}  // namespace

Corpus
Corpus::from_documents(Source role, std::vector<Document> documents) {
    Corpus corpus;
    corpus.role_ = role;
    corpus.documents_ = std::move(documents);
    corpus.index_.reserve(corpus.documents_.size());
    for (size_t i = 0; i < corpus.documents_.size(); ++i) {
        const Document& doc = corpus.documents_[i];
        if (doc.id.empty()) {
            throw ValidationError(fmt::format("document {} has an empty id", i));
        }
        if (doc.text.empty()) {
            throw ValidationError(fmt::format("document '{}' has empty text", doc.id));
        }
        auto [it, inserted] = corpus.index_.emplace(std::string_view(doc.id), i);
        (void)it;
        if (!inserted) {
            throw ValidationError(fmt::format("duplicate id '{}' in corpus", doc.id));
        }
    }
    return corpus;
}

std::optional<size_t>
Corpus::index_of(std::string_view id) const {
    auto it = index_.find(id);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

const Document&
Corpus::by_id(std::string_view id) const {
    auto idx = index_of(id);
    if (!idx) {
        throw ValidationError(fmt::format("no document with id '{}'", id));
    }
    return documents_[*idx];
}

CorpusFormat
parse_corpus_format(std::string_view s) {
    if (s == "text") {
        return CorpusFormat::kRawLines;
    }
    if (s == "jsonl") {
        return CorpusFormat::kJsonLines;
    }
    throw ValidationError(fmt::format("unknown corpus format '{}' (expected 'text' or 'jsonl')", s));
}

IngestResult
ingest(const std::filesystem::path& path, Source role, CorpusFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open corpus file: " + path.string());
    }

    IngestResult result;
    std::vector<Document> documents;
    std::unordered_set<std::string> seen_ids;

    std::string line;
    size_t line_index = 0;  // 0-based, also used for auto ids
    const auto reject = [&](std::string reason) {
        result.rejects.push_back({line_index + 1, std::move(reason)});
    };

    for (; std::getline(in, line); ++line_index) {
        ++result.input_lines;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }

        std::string raw_text;
        std::string explicit_id;
        if (format == CorpusFormat::kRawLines) {
            raw_text = line;
        } else {
            nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
            if (obj.is_discarded() || !obj.is_object()) {
                reject("invalid JSON object");
                continue;
            }
            if (!obj.contains("text")) {
                reject("missing 'text' field");
                continue;
            }
            if (!obj["text"].is_string()) {
                reject("'text' is not a string");
                continue;
            }
            raw_text = obj["text"].get<std::string>();
            if (obj.contains("id")) {
                if (!obj["id"].is_string()) {
                    reject("'id' is not a string");
                    continue;
                }
                explicit_id = obj["id"].get<std::string>();
                if (explicit_id.empty()) {
                    reject("empty 'id'");
                    continue;
                }
                if (has_control_chars(explicit_id)) {
                    reject("'id' contains control characters");
                    continue;
                }
            }
        }

        std::string text = trim_whitespace(nfc_normalize(normalize_newlines(raw_text)));
        if (text.empty()) {
            reject("empty text");
            continue;
        }

        std::string id = explicit_id.empty() ? auto_id(role, line_index) : explicit_id;
        if (!seen_ids.insert(id).second) {
            throw ValidationError(fmt::format("duplicate id '{}' at line {} of {}", id, line_index + 1, path.string()));
        }
        documents.push_back({std::move(id), role, std::move(text)});
    }
    if (in.bad()) {
        throw IoError("read error on corpus file: " + path.string());
    }

    result.corpus = Corpus::from_documents(role, std::move(documents));
    return result;
}

void
write_corpus(const Corpus& corpus, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write corpus file: " + path.string());
    }
    for (const Document& doc : corpus.documents()) {
        nlohmann::ordered_json obj;
        obj["id"] = doc.id;
        obj["source"] = to_string(doc.source);
        obj["text"] = doc.text;
        out << obj.dump() << '\n';
    }
    if (!out) {
        throw IoError("write error on corpus file: " + path.string());
    }
}

Corpus
read_corpus(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open corpus file: " + path.string());
    }
    std::vector<Document> documents;
    std::optional<Source> role;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object() || !obj.contains("id") || !obj.contains("source") ||
            !obj.contains("text")) {
            throw IoError(fmt::format("malformed corpus record at {}:{}", path.string(), line_no));
        }
        Source s = parse_source(obj["source"].get<std::string>());
        if (role && *role != s) {
            throw ValidationError(fmt::format("mixed source tags in corpus file {}", path.string()));
        }
        role = s;
        documents.push_back({obj["id"].get<std::string>(), s, obj["text"].get<std::string>()});
    }
    if (!role) {
        throw ValidationError("corpus file is empty: " + path.string());
    }
    return Corpus::from_documents(*role, std::move(documents));
}

void
write_rejects(const std::vector<RejectedLine>& rejects, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write rejects report: " + path.string());
    }
    for (const RejectedLine& r : rejects) {
        nlohmann::ordered_json obj;
        obj["line_number"] = r.line_number;
        obj["reason"] = r.reason;
        out << obj.dump() << '\n';
    }
}

CorpusStats
stats(const Corpus& corpus, const Vocab& vocab, const TokenizerConfig& config) {
    if (corpus.count() == 0) {
        throw ValidationError("stats requires a non-empty corpus");
    }
    CorpusStats s;
    s.doc_count = corpus.count();
    std::unordered_set<std::string_view> seen_texts;
    for (const Document& doc : corpus.documents()) {
        s.total_bytes += doc.text.size();
        const size_t tokens = tokenize(doc.text, vocab, config).size();
        s.total_tokens += tokens;
        size_t bucket = kTokenHistEdges.size();
        for (size_t i = 0; i < kTokenHistEdges.size(); ++i) {
            if (tokens < kTokenHistEdges[i]) {
                bucket = i;
                break;
            }
        }
        ++s.token_hist[bucket];
        if (!seen_texts.insert(doc.text).second) {
            ++s.duplicate_texts;
        }
    }
    return s;
}

}  // namespace knnapt
