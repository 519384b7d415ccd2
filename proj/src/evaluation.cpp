#include "coref/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace coref {

namespace {

using ordered_json = nlohmann::ordered_json;

double ranking_value(const SimilarityScore& score) {
  // Zero-tail pairs sort below every finite score regardless of measure.
  return score.zero_tail ? -std::numeric_limits<double>::infinity()
                         : score.value;
}

ordered_json metric_or_null(const std::optional<double>& value) {
  if (!value) return nullptr;
  return *value;
}

std::optional<double> metric_from_json(const ordered_json& value) {
  if (value.is_null()) return std::nullopt;
  return value.get<double>();
}

}  // namespace

const char* to_string(GroundTruthLabel label) {
  switch (label) {
    case GroundTruthLabel::same: return "same";
    case GroundTruthLabel::different: return "different";
    case GroundTruthLabel::unknown: return "unknown";
  }
  return "unknown";
}

GroundTruthLabel ground_truth(const Mention& m1, const Mention& m2) {
  if (!m1.suffix || !m2.suffix) return GroundTruthLabel::unknown;
  return *m1.suffix == *m2.suffix ? GroundTruthLabel::same
                                  : GroundTruthLabel::different;
}

ConfusionMatrix confusion(std::span<const Mention> mentions,
                          std::span<const CandidatePair> pairs) {
  ConfusionMatrix cm;
  for (const CandidatePair& pair : pairs) {
    if (pair.a >= mentions.size() || pair.b >= mentions.size()) {
      throw std::invalid_argument("pair references a mention outside the set");
    }
    if (!pair.predicted_same.has_value()) {
      throw std::invalid_argument("pair has no prediction");
    }
    GroundTruthLabel truth = ground_truth(mentions[pair.a], mentions[pair.b]);
    if (truth == GroundTruthLabel::unknown) {
      ++cm.excluded_unknown;
      continue;
    }
    bool predicted = *pair.predicted_same;
    bool same = truth == GroundTruthLabel::same;
    if (predicted && same) ++cm.tp;
    else if (predicted && !same) ++cm.fp;
    else if (!predicted && !same) ++cm.tn;
    else ++cm.fn;
  }
  return cm;
}

MetricReport metrics(const ConfusionMatrix& cm) {
  auto ratio = [](std::uint64_t num, std::uint64_t den) {
    return den == 0 ? std::optional<double>()
                    : std::optional<double>(static_cast<double>(num) /
                                            static_cast<double>(den));
  };
  MetricReport report;
  report.precision = ratio(cm.tp, cm.tp + cm.fp);
  report.accuracy = ratio(cm.tp + cm.tn, cm.evaluated());
  report.specificity = ratio(cm.tn, cm.tn + cm.fp);
  report.sensitivity = ratio(cm.tp, cm.tp + cm.fn);
  return report;
}

ZeroTailStats zero_tail_stats(std::span<const Mention> mentions,
                              std::span<const CandidatePair> pairs) {
  ZeroTailStats stats;
  for (const CandidatePair& pair : pairs) {
    if (!pair.score.zero_tail) continue;
    ++stats.pair_count;
    if (ground_truth(mentions[pair.a], mentions[pair.b]) ==
        GroundTruthLabel::same) {
      ++stats.fn_count;
    }
  }
  return stats;
}

std::optional<double> kta_literal(std::uint64_t n_new, std::uint64_t n_pot,
                                  std::span<const std::uint32_t> ranks) {
  if (ranks.size() != n_pot) {
    throw std::invalid_argument("ranks must have one entry per potential link");
  }
  std::vector<bool> seen(n_pot, false);
  for (std::uint32_t r : ranks) {
    if (r < 1 || r > n_pot || seen[r - 1]) {
      throw std::invalid_argument("ranks is not a permutation of 1..n_pot");
    }
    seen[r - 1] = true;
  }
  if (n_new + 1 >= n_pot) return std::nullopt;  // normalizer would be <= 0

  std::int64_t sum = 0;
  for (std::uint64_t t = n_new; t < n_pot; ++t) {
    sum += static_cast<std::int64_t>(ranks[t]) -
           static_cast<std::int64_t>(n_new) + 1;
  }
  return static_cast<double>(sum) /
         static_cast<double>(n_pot - 1 - n_new);
}

std::optional<double> auc_rank(const std::vector<double>& scores,
                               const std::vector<bool>& truth_same) {
  if (scores.size() != truth_same.size()) {
    throw std::invalid_argument("scores and labels differ in length");
  }
  std::size_t n = scores.size();
  std::size_t positives = 0;
  for (bool same : truth_same) {
    if (same) ++positives;
  }
  std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) return std::nullopt;

  // Mann-Whitney form: average ranks with ties averaged, then the positive
  // rank sum against its minimum.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });

  double positive_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    double average_rank = (static_cast<double>(i) + static_cast<double>(j) +
                           1.0) / 2.0;  // ranks are 1-based
    for (std::size_t k = i; k < j; ++k) {
      if (truth_same[order[k]]) positive_rank_sum += average_rank;
    }
    i = j;
  }
  double min_sum = static_cast<double>(positives) *
                   (static_cast<double>(positives) + 1.0) / 2.0;
  return (positive_rank_sum - min_sum) /
         (static_cast<double>(positives) * static_cast<double>(negatives));
}

RankEvaluation rank_evaluation(std::span<const Mention> mentions,
                               std::span<const CandidatePair> pairs) {
  // Ideal-first order: truth-same pairs before truth-different, each group
  // in pair-list order; unknown-truth pairs stay out entirely.
  std::vector<std::size_t> ideal;
  std::vector<bool> truth_same;
  std::vector<double> values;
  std::size_t n_new = 0;
  for (bool want_same : {true, false}) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      GroundTruthLabel truth =
          ground_truth(mentions[pairs[i].a], mentions[pairs[i].b]);
      if (truth == GroundTruthLabel::unknown) continue;
      bool same = truth == GroundTruthLabel::same;
      if (same != want_same) continue;
      ideal.push_back(i);
      truth_same.push_back(same);
      values.push_back(ranking_value(pairs[i].score));
      if (same) ++n_new;
    }
  }

  RankEvaluation out;
  out.n_new = n_new;
  out.n_pot = ideal.size();
  if (out.n_pot == 0) return out;

  // Rank permutation: sort ideal positions by descending score, ties broken
  // by ideal-first position; ranks[t] is the 1-indexed position of the t-th
  // ideal-first pair.
  std::vector<std::size_t> by_score(ideal.size());
  std::iota(by_score.begin(), by_score.end(), 0);
  std::sort(by_score.begin(), by_score.end(),
            [&](std::size_t a, std::size_t b) {
              if (values[a] != values[b]) return values[a] > values[b];
              return a < b;
            });
  std::vector<std::uint32_t> ranks(ideal.size());
  for (std::size_t position = 0; position < by_score.size(); ++position) {
    ranks[by_score[position]] = static_cast<std::uint32_t>(position + 1);
  }
  out.kta_literal = kta_literal(out.n_new, out.n_pot, ranks);
  out.auc = auc_rank(values, truth_same);
  return out;
}

EvaluationReport evaluate_run(std::string measure, double rho,
                              std::span<const Mention> mentions,
                              std::span<const CandidatePair> pairs) {
  EvaluationReport report;
  report.measure = std::move(measure);
  report.rho = rho;
  report.counts = confusion(mentions, pairs);
  report.metric_report = metrics(report.counts);
  ZeroTailStats zt = zero_tail_stats(mentions, pairs);
  report.metric_report.zero_tail_pair_count = zt.pair_count;
  report.metric_report.zero_tail_fn_count = zt.fn_count;
  report.ranking = rank_evaluation(mentions, pairs);
  return report;
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

const char* classification_label(GroundTruthLabel truth, bool predicted) {
  if (truth == GroundTruthLabel::unknown) return "UNK";
  bool same = truth == GroundTruthLabel::same;
  if (predicted) return same ? "TP" : "FP";
  return same ? "FN" : "TN";
}

std::string write_report(const EvaluationReport& report,
                         const BipartiteGraph& g,
                         std::span<const Mention> mentions,
                         std::span<const CandidatePair> pairs,
                         ReportFormat format) {
  if (format == ReportFormat::json) {
    ordered_json j;
    j["measure"] = report.measure;
    j["rho"] = report.rho;
    j["counts"] = {{"tp", report.counts.tp},
                   {"fp", report.counts.fp},
                   {"tn", report.counts.tn},
                   {"fn", report.counts.fn},
                   {"unknown", report.counts.excluded_unknown}};
    j["metrics"] = {
        {"precision", metric_or_null(report.metric_report.precision)},
        {"accuracy", metric_or_null(report.metric_report.accuracy)},
        {"specificity", metric_or_null(report.metric_report.specificity)},
        {"sensitivity", metric_or_null(report.metric_report.sensitivity)}};
    j["zero_tail"] = {{"pairs", report.metric_report.zero_tail_pair_count},
                      {"fn", report.metric_report.zero_tail_fn_count}};
    j["ranking"] = {{"kta_literal", metric_or_null(report.ranking.kta_literal)},
                    {"auc", metric_or_null(report.ranking.auc)},
                    {"n_new", report.ranking.n_new},
                    {"n_pot", report.ranking.n_pot}};
    return j.dump(2) + "\n";
  }

  if (format == ReportFormat::csv) {
    std::ostringstream out;
    out << "mention_a,mention_b,paper_a_key,paper_b_key,measure,value,"
           "zero_tail,predicted,truth,classification\n";
    for (const CandidatePair& pair : pairs) {
      const Mention& ma = mentions[pair.a];
      const Mention& mb = mentions[pair.b];
      GroundTruthLabel truth = ground_truth(ma, mb);
      bool predicted = pair.predicted_same.value_or(false);
      out << pair.a << ',' << pair.b << ',' << g.paper_key(ma.paper_id) << ','
          << g.paper_key(mb.paper_id) << ',' << report.measure << ','
          << format_double(pair.score.value) << ','
          << (pair.score.zero_tail ? "true" : "false") << ','
          << (predicted ? "true" : "false") << ',' << to_string(truth) << ','
          << classification_label(truth, predicted) << '\n';
    }
    return out.str();
  }
  throw std::invalid_argument("unsupported report format");
}

EvaluationReport parse_report_json(const std::string& bytes) {
  ordered_json j = ordered_json::parse(bytes);
  EvaluationReport report;
  report.measure = j.at("measure").get<std::string>();
  report.rho = j.at("rho").get<double>();
  const auto& counts = j.at("counts");
  report.counts.tp = counts.at("tp").get<std::uint64_t>();
  report.counts.fp = counts.at("fp").get<std::uint64_t>();
  report.counts.tn = counts.at("tn").get<std::uint64_t>();
  report.counts.fn = counts.at("fn").get<std::uint64_t>();
  report.counts.excluded_unknown = counts.at("unknown").get<std::uint64_t>();
  const auto& m = j.at("metrics");
  report.metric_report.precision = metric_from_json(m.at("precision"));
  report.metric_report.accuracy = metric_from_json(m.at("accuracy"));
  report.metric_report.specificity = metric_from_json(m.at("specificity"));
  report.metric_report.sensitivity = metric_from_json(m.at("sensitivity"));
  const auto& zt = j.at("zero_tail");
  report.metric_report.zero_tail_pair_count =
      zt.at("pairs").get<std::uint64_t>();
  report.metric_report.zero_tail_fn_count = zt.at("fn").get<std::uint64_t>();
  const auto& ranking = j.at("ranking");
  report.ranking.kta_literal = metric_from_json(ranking.at("kta_literal"));
  report.ranking.auc = metric_from_json(ranking.at("auc"));
  report.ranking.n_new = ranking.at("n_new").get<std::uint64_t>();
  report.ranking.n_pot = ranking.at("n_pot").get<std::uint64_t>();
  return report;
}

}  // namespace coref
