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
#include <set>
#include <span>
#include <string>
#include <vector>

#include "knnapt/common.hpp"
#include "knnapt/corpus.hpp"
#include "knnapt/embedding.hpp"

namespace knnapt {

/// Binary relevance judgments for one collection. Graded judgments are
/// rejected; every judged query must have at least one relevant document.
struct QrelsCollection {
    std::string name;
    std::map<std::string, std::set<std::string>> relevant;  // query_id -> relevant doc ids
};

struct RunEntry {
    std::string doc_id;
    double score;
};

/// Ranked output for one collection: per query, descending score with ties
/// broken by ascending doc id; no duplicate docs within a query.
struct RunCollection {
    std::string name;
    std::map<std::string, std::vector<RunEntry>> ranked;
};

/// TREC qrels: "query_id 0 doc_id relevance", relevance in {0,1}.
QrelsCollection
load_qrels(const std::filesystem::path& path);

/// TREC run: "query_id Q0 doc_id rank score run_name". Rows are re-sorted by
/// (score desc, doc_id asc) on load.
RunCollection
load_run(const std::filesystem::path& path);

void
write_run(const RunCollection& run, const std::filesystem::path& path, std::string_view run_name = "knnapt");

struct MetricTriple {
    double map10 = 0.0;
    double mrr = 0.0;
    double ndcg10 = 0.0;
};

/// Values are kept in [0,1]; rendering scales by 100.
struct EvalReport {
    std::vector<std::pair<std::string, MetricTriple>> per_collection;
    MetricTriple macro;  // unweighted mean over collections
    double mean_of_metrics = 0.0;
    std::vector<std::string> warnings;
};

/// Zero-shot retrieval: per query, the top_n documents by descending dot
/// product (cosine on unit vectors), ties by ascending doc id. Query and
/// document embeddings must share a space (same dimension).
RunCollection
retrieve(const Corpus& queries, const Corpus& docs, const EmbeddingSet& query_embeddings,
         const EmbeddingSet& doc_embeddings, int top_n = 1000);

/// Metric conventions (declared, since reference tooling varies):
///   MRR    — 1/rank of the first relevant document over the full ranking,
///            no cutoff; 0 when none retrieved.
///   MAP@10 — sum over ranks k<=10 of P@k * rel_k, divided by R = total
///            relevant for the query (trec_eval map_cut convention).
///   nDCG@10 — binary gains, discount 1/log2(rank+1), normalized by the
///            ideal DCG@10.
/// Per-query values are macro-averaged per collection, then across
/// collections with equal collection weight. Sums run in query-id order via
/// pairwise summation, so results are bit-stable. Runs and qrels pair by
/// index; a judged query missing from the run scores 0 and adds a warning.
EvalReport
evaluate(std::span<const RunCollection> runs, std::span<const QrelsCollection> qrels);

double
mean_of_metrics(double map10, double mrr, double ndcg10);

double
mean_of_metrics(const EvalReport& report);

/// JSON report with all values scaled by 100 at 2 decimals.
void
write_eval_report(const EvalReport& report, const std::filesystem::path& path);

std::string
render_eval_report(const EvalReport& report);

/// Fixed-order pairwise summation; exposed for reuse and tests.
double
pairwise_sum(std::span<const double> values);

}  // namespace knnapt
