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
#include <vector>

#include "knnapt/augment.hpp"
#include "knnapt/common.hpp"
#include "knnapt/tokenizer.hpp"

namespace knnapt {

inline constexpr int32_t kIgnoreLabel = -100;  // trainer ignore-index convention

struct MaskScheme {
    double mask_frac = 0.8;  // selected position -> [MASK]
    double random_frac = 0.1;  // -> uniform non-special vocab id
    double keep_frac = 0.1;    // -> unchanged
};

struct MaskConfig {
    double mlm_prob = 0.15;  // in (0, 1)
    int variations_dr = 10;  // X, applied to DR-source records
    int variations_id = 10;  // Y, applied to ID-source records
    MaskScheme scheme;
    uint64_t rng_seed = 0;
};

void
validate(const MaskConfig& config);

struct MaskedExample {
    std::string example_id;  // "<seed_id>/<source>/<variation_index>"
    std::string seed_id;
    Source source;
    int variation_index;
    std::vector<int32_t> input_ids;
    std::vector<int32_t> labels;  // original id at selected positions, kIgnoreLabel elsewhere
    std::vector<uint8_t> attention_mask;  // 0 exactly at [PAD]
};

/// X (DR) or Y (ID) independently masked copies of one record. Per
/// variation, every non-special position is selected with probability
/// mlm_prob; selected positions become [MASK] / random non-special id /
/// unchanged per the scheme fractions. A variation that selects nothing
/// force-selects one uniform non-special position. The RNG stream is keyed
/// by (rng_seed, seed_id, source, variation_index), so results are
/// independent of processing order. A record with no non-special tokens is
/// an error.
std::vector<MaskedExample>
mask_variations(const AugmentedRecord& record, const MaskConfig& config, const Vocab& vocab);

struct BudgetReport {
    size_t num_examples = 0;
    int batch_size = 64;
    int epochs = 1;
    size_t steps_per_epoch = 0;  // ceil(num_examples / batch_size)
    size_t total_steps = 0;      // steps_per_epoch * epochs
    uint64_t approx_bytes = 0;   // dataset file size; 0 when not applicable
    std::string reference_note;  // set when the configuration matches a known reference run
};

/// Exact ceiling arithmetic. For the 200000/64/20 configuration the
/// reference grid reports 56K steps (~179K effective examples); the report
/// carries that note rather than imitating the published number.
BudgetReport
budget(size_t num_examples, int batch_size, int epochs);

/// Writes one MaskedExample per line (JSONL; see README for the schema) in
/// deterministic (record, variation) order, byte-identical across thread
/// counts, and returns the budget for the resulting example count.
BudgetReport
build_dataset(std::span<const AugmentedRecord> records, const MaskConfig& config, const Vocab& vocab,
              const std::filesystem::path& out_path, int batch_size = 64, int epochs = 1, int threads = 1);

void
write_budget_report(const BudgetReport& report, const std::filesystem::path& path);

/// One dataset line; exposed for tools and tests.
std::string
serialize_example(const MaskedExample& example, std::string_view augmented_text);

}  // namespace knnapt
