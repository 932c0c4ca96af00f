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

#include "knnapt/tokenizer.hpp"

#include <fmt/format.h>
#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <fstream>

#include "knnapt/text.hpp"

namespace knnapt {

namespace {

bool
is_break_space(UChar32 c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || u_isUWhiteSpace(c);
}

// BERT convention: ASCII punctuation blocks plus Unicode category P*.
bool
is_punct_cp(UChar32 c) {
    if ((c >= 33 && c <= 47) || (c >= 58 && c <= 64) || (c >= 91 && c <= 96) || (c >= 123 && c <= 126)) {
        return true;
    }
    return u_ispunct(c);
}

bool
is_dropped_control(UChar32 c) {
    return (c < 0x20 && c != '\t' && c != '\n' && c != '\r') || c == 0x7f;
}

void
append_cp(std::string& out, UChar32 c) {
    uint8_t buf[U8_MAX_LENGTH];
    int32_t len = 0;
    U8_APPEND_UNSAFE(buf, len, c);
    out.append(reinterpret_cast<const char*>(buf), static_cast<size_t>(len));
}

}  // namespace

Vocab
Vocab::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open vocab file: " + path.string());
    }
    std::vector<std::string> tokens;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            throw ValidationError(fmt::format("empty vocab entry at {}:{}", path.string(), line_no));
        }
        tokens.push_back(line);
    }
    if (in.bad()) {
        throw IoError("read error on vocab file: " + path.string());
    }
    return from_tokens(std::move(tokens));
}

Vocab
Vocab::from_tokens(std::vector<std::string> tokens) {
    Vocab v;
    v.tokens_ = std::move(tokens);
    v.id_of_.reserve(v.tokens_.size());

    std::vector<std::string> duplicates;
    for (size_t i = 0; i < v.tokens_.size(); ++i) {
        auto [it, inserted] = v.id_of_.emplace(v.tokens_[i], static_cast<int32_t>(i));
        (void)it;
        if (!inserted) {
            duplicates.push_back(v.tokens_[i]);
        }
        v.max_token_cp_ = std::max(v.max_token_cp_, codepoint_count(v.tokens_[i]));
    }
    if (!duplicates.empty()) {
        std::string joined;
        for (const auto& d : duplicates) {
            joined += joined.empty() ? "'" + d + "'" : ", '" + d + "'";
        }
        throw ValidationError("duplicate vocab tokens: " + joined);
    }

    const auto special = [&](std::string_view name) {
        int32_t id = v.id_of(name);
        if (id < 0) {
            throw ValidationError(fmt::format("vocab is missing required special token {}", name));
        }
        return id;
    };
    v.pad_id_ = special(kPadToken);
    v.unk_id_ = special(kUnkToken);
    v.cls_id_ = special(kClsToken);
    v.sep_id_ = special(kSepToken);
    v.mask_id_ = special(kMaskToken);
    v.special_ids_ = {v.pad_id_, v.unk_id_, v.cls_id_, v.sep_id_, v.mask_id_};
    std::sort(v.special_ids_.begin(), v.special_ids_.end());
    return v;
}

int32_t
Vocab::id_of(std::string_view token) const {
    auto it = id_of_.find(token);
    return it == id_of_.end() ? -1 : it->second;
}

const std::string&
Vocab::token(int32_t id) const {
    if (id < 0 || static_cast<size_t>(id) >= tokens_.size()) {
        throw ValidationError(fmt::format("token id {} out of range (vocab size {})", id, tokens_.size()));
    }
    return tokens_[static_cast<size_t>(id)];
}

void
validate(const TokenizerConfig& config) {
    if (config.max_len < 8) {
        throw ValidationError(fmt::format("max_len must be >= 8, got {}", config.max_len));
    }
    if (config.continuation_prefix.empty()) {
        throw ValidationError("continuation_prefix must be non-empty");
    }
}

std::vector<std::string>
pretokenize(std::string_view text, const TokenizerConfig& config) {
    std::string lowered;
    if (!config.cased) {
        lowered = to_lower(text);
        text = lowered;
    }

    std::vector<std::string> out;
    std::string current;
    const auto flush = [&] {
        if (!current.empty()) {
            out.push_back(std::move(current));
            current.clear();
        }
    };

    const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
    const int32_t len = static_cast<int32_t>(text.size());
    int32_t i = 0;
    while (i < len) {
        UChar32 c;
        int32_t prev = i;
        U8_NEXT(bytes, i, len, c);
        if (c < 0) {  // invalid byte sequence
            c = 0xFFFD;
            if (i <= prev) {
                i = prev + 1;
            }
        }
        if (is_dropped_control(c)) {
            continue;
        }
        if (is_break_space(c)) {
            flush();
        } else if (is_punct_cp(c)) {
            flush();
            std::string single;
            append_cp(single, c);
            out.push_back(std::move(single));
        } else {
            append_cp(current, c);
        }
    }
    flush();
    return out;
}

TokenSeq
tokenize(std::string_view text, const Vocab& vocab, const TokenizerConfig& config) {
    validate(config);
    TokenSeq out;
    std::string candidate;

    for (const std::string& pre : pretokenize(text, config)) {
        const std::vector<size_t> offsets = codepoint_offsets(pre);
        const size_t cp_len = offsets.size() - 1;

        std::vector<int32_t> pieces;
        size_t start = 0;
        bool matched = true;
        while (start < cp_len) {
            // Longest-match-first; nothing longer than the longest vocab
            // entry can match, so cap the window there.
            size_t end = std::min(cp_len, start + vocab.max_token_codepoints());
            int32_t piece_id = -1;
            for (; end > start; --end) {
                candidate.clear();
                if (start > 0) {
                    candidate += config.continuation_prefix;
                }
                candidate.append(pre, offsets[start], offsets[end] - offsets[start]);
                piece_id = vocab.id_of(candidate);
                if (piece_id >= 0) {
                    break;
                }
            }
            if (piece_id < 0) {
                matched = false;
                break;
            }
            pieces.push_back(piece_id);
            start = end;
        }

        if (matched) {
            out.ids.insert(out.ids.end(), pieces.begin(), pieces.end());
        } else {
            out.ids.push_back(vocab.unk_id());
        }
    }
    out.is_special.assign(out.ids.size(), 0);
    return out;
}

TokenSeq
pack(std::span<const TokenSeq> segments, const Vocab& vocab, const TokenizerConfig& config) {
    validate(config);
    if (segments.empty()) {
        throw ValidationError("pack requires at least one segment");
    }
    const size_t max_len = static_cast<size_t>(config.max_len);

    TokenSeq out;
    out.ids.reserve(max_len);
    out.is_special.reserve(max_len);
    out.ids.push_back(vocab.cls_id());
    out.is_special.push_back(1);
    for (const TokenSeq& seg : segments) {
        out.ids.insert(out.ids.end(), seg.ids.begin(), seg.ids.end());
        out.is_special.insert(out.is_special.end(), seg.ids.size(), 0);
        out.ids.push_back(vocab.sep_id());
        out.is_special.push_back(1);
        if (out.ids.size() > max_len) {
            break;  // already past the budget; no need to assemble the rest
        }
    }

    if (out.ids.size() > max_len) {
        out.ids.resize(max_len);
        out.is_special.resize(max_len);
        out.ids.back() = vocab.sep_id();
        out.is_special.back() = 1;
    }
    while (out.ids.size() < max_len) {
        out.ids.push_back(vocab.pad_id());
        out.is_special.push_back(1);
    }
    return out;
}

}  // namespace knnapt
