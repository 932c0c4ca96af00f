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

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace knnapt {

/// Canonical composition (NFC). German umlauts and ß arrive in mixed
/// compositions from real exports; everything downstream assumes NFC.
std::string
nfc_normalize(std::string_view utf8);

/// CRLF and lone CR become LF.
std::string
normalize_newlines(std::string_view text);

/// Strips leading/trailing Unicode whitespace (White_Space property).
std::string
trim_whitespace(std::string_view utf8);

/// Byte offsets of code point boundaries; result has cp_count+1 entries,
/// last one == utf8.size(). Invalid bytes count as one code point each.
std::vector<size_t>
codepoint_offsets(std::string_view utf8);

size_t
codepoint_count(std::string_view utf8);

/// Lowercases with ICU (root locale). Used only when a tokenizer is configured uncased.
std::string
to_lower(std::string_view utf8);

}  // namespace knnapt
