#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>

#include "coref/graph.hpp"

namespace coref {

enum class Measure { cn, aa, pmi };

const char* to_string(Measure m);
std::optional<Measure> measure_from(std::string_view name);

// Value assigned to PMI when the common-neighbour set is empty; compares
// below any finite threshold.
inline constexpr double kPmiZeroTailValue =
    -std::numeric_limits<double>::infinity();

// Score of one paper pair under one measure. `zero_tail` is true iff the
// common-neighbour set after exclusion is empty; the flag is carried
// explicitly so downstream 0-tail statistics stay exact.
struct SimilarityScore {
  Measure measure = Measure::cn;
  double value = 0.0;
  bool zero_tail = false;
};

// Common-neighbour count: |common_neighbors(p1, p2, exclude)|.
SimilarityScore cn_score(const BipartiteGraph& g, PaperId p1, PaperId p2,
                         const NodeSet& exclude);

// Sum of 1/ln(author_degree[c]) over the common neighbours c. Degree-1
// terms are undefined (1/ln 1) and are skipped; the skip count accumulates
// into *degenerate_terms when given. Degree-1 common neighbours can only
// occur on same-paper pairs.
SimilarityScore aa_score(const BipartiteGraph& g, PaperId p1, PaperId p2,
                         const NodeSet& exclude,
                         std::uint64_t* degenerate_terms = nullptr);

// Pointwise mutual information with probabilities estimated from neighbour
// set sizes over the author population N: with G1, G2 the papers' author
// sets minus the exclusion and C their intersection size,
//   value = ln(C * N / (|G1| * |G2|)),
// or the zero-tail sentinel when C == 0.
SimilarityScore pmi_score(const BipartiteGraph& g, PaperId p1, PaperId p2,
                          const NodeSet& exclude);

// Dispatch on the measure tag.
SimilarityScore score_pair(const BipartiteGraph& g, Measure m, PaperId p1,
                           PaperId p2, const NodeSet& exclude,
                           std::uint64_t* degenerate_terms = nullptr);

}  // namespace coref
