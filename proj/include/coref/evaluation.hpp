#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coref/disambiguator.hpp"
#include "coref/graph.hpp"

namespace coref {

// Pairwise identity label from the suffix ground truth. A mention without a
// suffix carries no identity claim, so any pair touching one is `unknown`
// and stays out of the confusion matrix.
enum class GroundTruthLabel { same, different, unknown };

const char* to_string(GroundTruthLabel label);

GroundTruthLabel ground_truth(const Mention& m1, const Mention& m2);

struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;
  std::uint64_t excluded_unknown = 0;

  std::uint64_t evaluated() const { return tp + fp + tn + fn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

// Tallies predictions against ground truth. Throws std::invalid_argument on
// a pair without a prediction.
ConfusionMatrix confusion(std::span<const Mention> mentions,
                          std::span<const CandidatePair> pairs);

// The four ratios; nullopt marks an undefined value (zero denominator).
struct MetricReport {
  std::optional<double> precision;    // tp / (tp + fp)
  std::optional<double> accuracy;     // (tp + tn) / all evaluated
  std::optional<double> specificity;  // tn / (tn + fp), true negative rate
  std::optional<double> sensitivity;  // tp / (tp + fn), true positive rate
  std::uint64_t zero_tail_pair_count = 0;
  std::uint64_t zero_tail_fn_count = 0;

  bool operator==(const MetricReport&) const = default;
};

// Ratios only; the zero-tail fields are filled by zero_tail_stats.
MetricReport metrics(const ConfusionMatrix& cm);

// Count of zero-tail pairs and of the subset whose ground truth is `same`
// (the forced false negatives).
struct ZeroTailStats {
  std::uint64_t pair_count = 0;
  std::uint64_t fn_count = 0;
};

ZeroTailStats zero_tail_stats(std::span<const Mention> mentions,
                              std::span<const CandidatePair> pairs);

// Rank-quality score in its literal normalized-sum form:
//   (1 / (n_pot - 1 - n_new)) * sum over t in [n_new, n_pot) of
//   (ranks[t] - n_new + 1)
// where ranks[t] is the 1-indexed position the ranking assigns to the t-th
// potential link, with potential links listed ideal-first (all new links
// before all others). Returns nullopt when the normalizer is not positive;
// throws std::invalid_argument when ranks is not a permutation of 1..n_pot.
std::optional<double> kta_literal(std::uint64_t n_new, std::uint64_t n_pot,
                                  std::span<const std::uint32_t> ranks);

// Probability that a uniformly random (same, different) pair is ordered
// correctly; ties count half. Returns nullopt when either class is empty.
// Callers map zero-tail scores to -infinity so they sort below all finite
// scores.
std::optional<double> auc_rank(const std::vector<double>& scores,
                               const std::vector<bool>& truth_same);

struct RankEvaluation {
  std::uint64_t n_new = 0;  // pairs whose ground truth is same
  std::uint64_t n_pot = 0;  // pairs with known ground truth
  std::optional<double> kta_literal;
  std::optional<double> auc;

  bool operator==(const RankEvaluation&) const = default;
};

// Builds the ideal-first rank permutation and the AUC from scored pairs.
// Ranking is by descending score (zero-tail mapped to -infinity), ties
// broken by ideal-first position so the permutation is deterministic.
RankEvaluation rank_evaluation(std::span<const Mention> mentions,
                               std::span<const CandidatePair> pairs);

// Aggregate report for one (measure, rho) run.
struct EvaluationReport {
  std::string measure;
  double rho = 0.0;
  ConfusionMatrix counts;
  MetricReport metric_report;
  RankEvaluation ranking;

  bool operator==(const EvaluationReport&) const = default;
};

EvaluationReport evaluate_run(std::string measure, double rho,
                              std::span<const Mention> mentions,
                              std::span<const CandidatePair> pairs);

enum class ReportFormat { json, csv };

// json: the aggregate report object
//   {measure, rho, counts{...}, metrics{...}, zero_tail{...}, ranking{...}}
//   with null for undefined metrics.
// csv: one row per pair with columns mention_a, mention_b, paper_a_key,
//   paper_b_key, measure, value, zero_tail, predicted, truth,
//   classification (TP/FP/TN/FN/UNK).
// Output is deterministic for identical inputs.
std::string write_report(const EvaluationReport& report,
                         const BipartiteGraph& g,
                         std::span<const Mention> mentions,
                         std::span<const CandidatePair> pairs,
                         ReportFormat format);

// Inverse of the json form of write_report.
EvaluationReport parse_report_json(const std::string& bytes);

// TP/FP/TN/FN/UNK cell for one classified pair.
const char* classification_label(GroundTruthLabel truth, bool predicted);

// Shortest round-trip decimal form; used for all numeric report output.
std::string format_double(double value);

}  // namespace coref
