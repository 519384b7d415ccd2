#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coref/graph.hpp"
#include "coref/similarity.hpp"

namespace coref {

using MentionId = std::uint32_t;

// One occurrence of the ambiguous name on one paper; the unit being
// disambiguated. `suffix` is the hidden identity label: evaluation may read
// it, scoring never does.
struct Mention {
  MentionId mention_id = 0;
  PaperId paper_id = 0;
  AuthorId author_node = 0;
  std::optional<std::string> suffix;
};

// An unordered mention pair (a < b) with its score and classification.
struct CandidatePair {
  MentionId a = 0;
  MentionId b = 0;
  SimilarityScore score;
  std::optional<bool> predicted_same;
  bool same_paper = false;
};

// Result of a mention query: every mention of the canonical name plus the
// full set of homonym author nodes. That node set is the scoring exclusion:
// no node spelled like the query may count as neighbour evidence, which
// keeps suffixed variants from leaking ground truth into the scores.
struct MentionSet {
  std::string query;
  std::vector<Mention> mentions;
  NodeSet homonym_nodes;
};

// One Mention per (paper, author-node) whose canonical name equals the
// already-normalized `query_canonical`, ordered by (paper_id, author node).
// No match yields an empty set, not an error.
MentionSet find_mentions(const BipartiteGraph& g,
                         std::string_view query_canonical,
                         bool case_insensitive = false);

// Applies the measure to the two mentions' papers with the homonym exclusion
// set. Throws std::invalid_argument on identical mention ids.
SimilarityScore two_step_score(const BipartiteGraph& g, const Mention& m1,
                               const Mention& m2, Measure measure,
                               const NodeSet& exclude,
                               std::uint64_t* degenerate_terms = nullptr);

// Strictly-greater threshold rule; a tie at rho classifies negative.
bool classify(const SimilarityScore& score, double rho);

// Scores every unordered mention pair, in (a, b) lexicographic order. Pairs
// are scored in parallel across `threads` workers (0 = hardware
// concurrency); output order and content do not depend on the worker count.
// Throws std::invalid_argument with "nothing to disambiguate" for fewer
// than two mentions.
std::vector<CandidatePair> score_all_pairs(
    const BipartiteGraph& g, const MentionSet& ms, Measure measure,
    unsigned threads = 0, std::uint64_t* degenerate_terms = nullptr);

// (Re)classifies scored pairs at the given threshold.
void apply_threshold(std::span<CandidatePair> pairs, double rho);

// score_all_pairs + apply_threshold.
std::vector<CandidatePair> run_all_pairs(const BipartiteGraph& g,
                                         const MentionSet& ms, Measure measure,
                                         double rho, unsigned threads = 0);

// Partition of the mention set induced by predicted-same pairs; every
// mention maps to the smallest mention id of its cluster.
struct ClusterAssignment {
  std::vector<MentionId> representative;

  std::size_t cluster_count() const;
  bool same_cluster(MentionId a, MentionId b) const {
    return representative[a] == representative[b];
  }
};

// Union-find closure of the "is the same author" relation over pairs with
// predicted_same == true.
ClusterAssignment transitive_closure(std::size_t mention_count,
                                     std::span<const CandidatePair> pairs);

}  // namespace coref
