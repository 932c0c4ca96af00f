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

#include <stdexcept>
#include <string>
#include <string_view>

namespace knnapt {

/// Bad inputs, bad configuration, violated preconditions. Maps to exit code 1 in the CLI.
class ValidationError : public std::runtime_error {
 public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem and serialization failures. Maps to exit code 2 in the CLI.
class IoError : public std::runtime_error {
 public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Corpus role. TARGET anchors augmentation; ID and DR are retrieval sources.
enum class Source { kTarget, kInDomain, kDomainRelated };

inline const char*
to_string(Source s) {
    switch (s) {
        case Source::kTarget:
            return "TARGET";
        case Source::kInDomain:
            return "ID";
        case Source::kDomainRelated:
            return "DR";
    }
    return "?";
}

inline Source
parse_source(std::string_view s) {
    if (s == "TARGET") {
        return Source::kTarget;
    }
    if (s == "ID") {
        return Source::kInDomain;
    }
    if (s == "DR") {
        return Source::kDomainRelated;
    }
    throw ValidationError("unknown source tag: '" + std::string(s) + "' (expected TARGET, ID or DR)");
}

}  // namespace knnapt
