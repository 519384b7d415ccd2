#include "coref/similarity.hpp"

#include <cmath>

namespace coref {

const char* to_string(Measure m) {
  switch (m) {
    case Measure::cn: return "cn";
    case Measure::aa: return "aa";
    case Measure::pmi: return "pmi";
  }
  return "cn";
}

std::optional<Measure> measure_from(std::string_view name) {
  if (name == "cn") return Measure::cn;
  if (name == "aa") return Measure::aa;
  if (name == "pmi") return Measure::pmi;
  return std::nullopt;
}

SimilarityScore cn_score(const BipartiteGraph& g, PaperId p1, PaperId p2,
                         const NodeSet& exclude) {
  auto common = common_neighbors(g, p1, p2, exclude);
  return {Measure::cn, static_cast<double>(common.size()), common.empty()};
}

SimilarityScore aa_score(const BipartiteGraph& g, PaperId p1, PaperId p2,
                         const NodeSet& exclude,
                         std::uint64_t* degenerate_terms) {
  auto common = common_neighbors(g, p1, p2, exclude);
  double sum = 0.0;
  for (AuthorId c : common) {
    std::size_t degree = g.author_degree(c);
    if (degree < 2) {
      // 1/ln(1) is undefined; only reachable on same-paper pairs.
      if (degenerate_terms) ++*degenerate_terms;
      continue;
    }
    sum += 1.0 / std::log(static_cast<double>(degree));
  }
  return {Measure::aa, sum, common.empty()};
}

SimilarityScore pmi_score(const BipartiteGraph& g, PaperId p1, PaperId p2,
                          const NodeSet& exclude) {
  g.check_paper(p1);
  g.check_paper(p2);
  std::uint64_t size1 = 0, size2 = 0;
  for (AuthorId a : g.authors_of(p1)) {
    if (!exclude.contains(a)) ++size1;
  }
  for (AuthorId a : g.authors_of(p2)) {
    if (!exclude.contains(a)) ++size2;
  }
  std::uint64_t common = common_neighbors(g, p1, p2, exclude).size();
  if (common == 0 || size1 == 0 || size2 == 0) {
    return {Measure::pmi, kPmiZeroTailValue, true};
  }
  // ln(p(1,2) / (p(1) p(2))) with p estimated as neighbour-set size over the
  // author population; the Ns cancel down to one factor.
  double numerator =
      static_cast<double>(common) * static_cast<double>(g.author_count());
  double denominator =
      static_cast<double>(size1) * static_cast<double>(size2);
  return {Measure::pmi, std::log(numerator / denominator), false};
}

SimilarityScore score_pair(const BipartiteGraph& g, Measure m, PaperId p1,
                           PaperId p2, const NodeSet& exclude,
                           std::uint64_t* degenerate_terms) {
  switch (m) {
    case Measure::cn: return cn_score(g, p1, p2, exclude);
    case Measure::aa: return aa_score(g, p1, p2, exclude, degenerate_terms);
    case Measure::pmi: return pmi_score(g, p1, p2, exclude);
  }
  return cn_score(g, p1, p2, exclude);
}

}  // namespace coref
