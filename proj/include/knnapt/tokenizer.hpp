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
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "knnapt/common.hpp"

namespace knnapt {

inline constexpr std::string_view kPadToken = "[PAD]";
inline constexpr std::string_view kUnkToken = "[UNK]";
inline constexpr std::string_view kClsToken = "[CLS]";
inline constexpr std::string_view kSepToken = "[SEP]";
inline constexpr std::string_view kMaskToken = "[MASK]";

/// BERT-convention vocabulary: one token per line, line index = id.
/// All five special tokens must be present; duplicates are fatal.
/// Immutable after load.
class Vocab {
 public:
    static Vocab
    load(const std::filesystem::path& path);

    static Vocab
    from_tokens(std::vector<std::string> tokens);

    size_t
    size() const {
        return tokens_.size();
    }

    /// -1 when absent.
    int32_t
    id_of(std::string_view token) const;

    const std::string&
    token(int32_t id) const;

    int32_t
    pad_id() const {
        return pad_id_;
    }
    int32_t
    unk_id() const {
        return unk_id_;
    }
    int32_t
    cls_id() const {
        return cls_id_;
    }
    int32_t
    sep_id() const {
        return sep_id_;
    }
    int32_t
    mask_id() const {
        return mask_id_;
    }

    /// The five reserved ids, ascending. Masking never replaces a token with one of these.
    const std::vector<int32_t>&
    special_ids() const {
        return special_ids_;
    }

    /// Longest token length in code points; bounds the greedy match window.
    size_t
    max_token_codepoints() const {
        return max_token_cp_;
    }

 private:
    struct StringHash {
        using is_transparent = void;
        size_t
        operator()(std::string_view s) const {
            return std::hash<std::string_view>{}(s);
        }
    };

    std::vector<std::string> tokens_;
    std::unordered_map<std::string, int32_t, StringHash, std::equal_to<>> id_of_;
    int32_t pad_id_ = -1, unk_id_ = -1, cls_id_ = -1, sep_id_ = -1, mask_id_ = -1;
    std::vector<int32_t> special_ids_;
    size_t max_token_cp_ = 0;
};

struct TokenizerConfig {
    int max_len = 512;  // >= 8
    bool cased = true;
    std::string continuation_prefix = "##";
};

void
validate(const TokenizerConfig& config);

/// ids plus an aligned flag marking structural specials ([CLS]/[SEP]/[PAD]).
/// [UNK] stands in for content and is not flagged.
struct TokenSeq {
    std::vector<int32_t> ids;
    std::vector<uint8_t> is_special;

    size_t
    size() const {
        return ids.size();
    }
};

/// Pre-split, applied before WordPiece. Rules (GBERT's own are unpublished,
/// so these are fixed here and auditable):
///   - C0/DEL control characters other than \t \n \r are dropped in place;
///   - Unicode White_Space splits tokens and is discarded;
///   - punctuation (ASCII ranges 33-47/58-64/91-96/123-126 or Unicode
///     category P*) becomes a single-codepoint token;
///   - invalid UTF-8 bytes decode as U+FFFD and join the surrounding token;
///   - when config.cased is false the text is lowercased first (root locale).
std::vector<std::string>
pretokenize(std::string_view text, const TokenizerConfig& config);

/// Greedy longest-match-first WordPiece over each pre-token, matching on
/// code point boundaries; continuations carry config.continuation_prefix.
/// A pre-token with no decomposition becomes a single [UNK]. Pure function
/// of (text, vocab, config); no specials are added.
TokenSeq
tokenize(std::string_view text, const Vocab& vocab, const TokenizerConfig& config);

/// [CLS] seg1 [SEP] seg2 [SEP] ... [SEP], truncated from the tail so the
/// final kept token is always [SEP], then padded with [PAD] to exactly
/// config.max_len. Requires at least one segment.
TokenSeq
pack(std::span<const TokenSeq> segments, const Vocab& vocab, const TokenizerConfig& config);

}  // namespace knnapt
