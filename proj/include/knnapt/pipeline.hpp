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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "knnapt/augment.hpp"
#include "knnapt/common.hpp"
#include "knnapt/corpus.hpp"
#include "knnapt/embedding.hpp"
#include "knnapt/masking.hpp"

namespace knnapt {

struct CorpusInput {
    std::filesystem::path path;
    CorpusFormat format = CorpusFormat::kJsonLines;
};

/// "X:Y, D" -> (variations_dr, variations_id, max_distance); the ", D" part
/// is optional.
struct VariationSpec {
    int variations_dr;
    int variations_id;
    std::optional<float> max_distance;
};

VariationSpec
parse_variation_spec(std::string_view spec);

/// One declarative experiment. JSON file keys mirror the field names; the
/// optional "configuration" shorthand ("10:10, 0.7") fills variation counts
/// and max_distance unless explicit fields override it.
struct RunConfig {
    CorpusInput target;
    std::optional<CorpusInput> in_domain;
    std::optional<CorpusInput> domain_related;
    std::filesystem::path vocab_path;
    std::filesystem::path output_dir;

    EmbedderConfig embedder;
    // Externally computed vectors; when set, embed_builtin is bypassed.
    std::optional<std::filesystem::path> import_target;
    std::optional<std::filesystem::path> import_in_domain;
    std::optional<std::filesystem::path> import_domain_related;

    int k = 3;
    float max_distance = 0.7f;
    int variations_dr = 10;
    int variations_id = 10;
    double mlm_prob = 0.15;
    MaskScheme scheme;
    uint64_t rng_seed = 0;
    int batch_size = 64;
    int epochs = 20;
    int token_budget = 512;
    std::vector<Source> sources{Source::kInDomain, Source::kDomainRelated};
    bool exclude_self = true;
    int threads = 1;  // speed only; never changes output bytes

    static RunConfig
    from_json_file(const std::filesystem::path& path);

    /// All referenced files must exist; numeric invariants checked.
    void
    validate() const;

    std::string
    to_json() const;  // fully-resolved echo
};

struct PipelineResult {
    BudgetReport budget;
    std::map<std::string, bool> stage_skipped;  // stage name -> served from cache
    std::filesystem::path dataset_path;
    std::filesystem::path budget_path;
    std::filesystem::path audit_path;
};

/// ingest -> embed/import -> index -> augment -> dataset. Stage outputs are
/// cached by content hash of their inputs and reused when unchanged. Any
/// stage error aborts with the stage name and cause; partially written
/// outputs are removed. The output directory is locked for the duration of
/// the run. Two runs with identical config and inputs produce byte-identical
/// dataset and report files, whatever the thread count.
PipelineResult
run_pipeline(const RunConfig& config);

}  // namespace knnapt
