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

#include "knnapt/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <stdexcept>

#include "knnapt/common.hpp"

namespace knnapt {

namespace {

const icu::Normalizer2&
nfc_instance() {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status) || norm == nullptr) {
        throw std::runtime_error("ICU NFC normalizer unavailable");
    }
    return *norm;
}

bool
is_space_cp(UChar32 c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || u_isUWhiteSpace(c);
}

}  // namespace

std::string
nfc_normalize(std::string_view utf8) {
    icu::UnicodeString us = icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int>(utf8.size())));
    UErrorCode status = U_ZERO_ERROR;
    icu::UnicodeString normalized = nfc_instance().normalize(us, status);
    if (U_FAILURE(status)) {
        throw std::runtime_error("NFC normalization failed");
    }
    std::string out;
    normalized.toUTF8String(out);
    return out;
}

std::string
normalize_newlines(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\r') {
            out.push_back('\n');
            if (i + 1 < text.size() && text[i + 1] == '\n') {
                ++i;
            }
        } else {
            out.push_back(text[i]);
        }
    }
    return out;
}

std::string
trim_whitespace(std::string_view utf8) {
    const auto offsets = codepoint_offsets(utf8);
    const size_t n = offsets.size() - 1;
    size_t first = 0;
    size_t last = n;
    const auto cp_at = [&](size_t i) -> UChar32 {
        int32_t off = static_cast<int32_t>(offsets[i]);
        int32_t len = static_cast<int32_t>(utf8.size());
        UChar32 c;
        U8_NEXT(reinterpret_cast<const uint8_t*>(utf8.data()), off, len, c);
        return c < 0 ? 0xFFFD : c;
    };
    while (first < n && is_space_cp(cp_at(first))) {
        ++first;
    }
    while (last > first && is_space_cp(cp_at(last - 1))) {
        --last;
    }
    return std::string(utf8.substr(offsets[first], offsets[last] - offsets[first]));
}

std::vector<size_t>
codepoint_offsets(std::string_view utf8) {
    std::vector<size_t> offsets;
    offsets.reserve(utf8.size() + 1);
    const auto* bytes = reinterpret_cast<const uint8_t*>(utf8.data());
    int32_t i = 0;
    const int32_t len = static_cast<int32_t>(utf8.size());
    while (i < len) {
        offsets.push_back(static_cast<size_t>(i));
        UChar32 c;
        int32_t prev = i;
        U8_NEXT(bytes, i, len, c);
        if (i <= prev) {  // safety against malformed input stalls
            i = prev + 1;
        }
    }
    offsets.push_back(utf8.size());
    return offsets;
}

size_t
codepoint_count(std::string_view utf8) {
    return codepoint_offsets(utf8).size() - 1;
}

std::string
to_lower(std::string_view utf8) {
    icu::UnicodeString us = icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int>(utf8.size())));
    us.toLower(icu::Locale::getRoot());
    std::string out;
    us.toUTF8String(out);
    return out;
}

}  // namespace knnapt
