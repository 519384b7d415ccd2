#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "coref/common.hpp"
#include "coref/names.hpp"
#include "coref/record.hpp"

namespace coref {

struct AuthorNode {
  AuthorId node_id = 0;
  std::string canonical_name;
  std::optional<std::string> homonym_suffix;

  std::string full_key() const;
};

struct PaperNode {
  PaperId paper_id = 0;
  std::string dblp_key;
  std::optional<int> year;
  std::string title;
};

// Sorted, duplicate-free id set. Small in practice (the homonym variants of
// one query name), so membership is a binary search.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::vector<std::uint32_t> ids);

  bool contains(std::uint32_t id) const;
  bool empty() const noexcept { return ids_.empty(); }
  std::size_t size() const noexcept { return ids_.size(); }
  std::span<const std::uint32_t> ids() const noexcept { return ids_; }

 private:
  std::vector<std::uint32_t> ids_;
};

// Immutable bipartite author-paper graph. Adjacency is CSR in both
// directions with strictly ascending rows; all query operations are pure and
// safe for unrestricted concurrent reads.
class BipartiteGraph {
 public:
  std::size_t author_count() const noexcept { return author_canonical_.size(); }
  std::size_t paper_count() const noexcept { return paper_key_.size(); }
  std::size_t edge_count() const noexcept { return paper_neighbors_.size(); }

  // Sorted paper row of one author / author row of one paper.
  std::span<const PaperId> papers_of(AuthorId a) const;
  std::span<const AuthorId> authors_of(PaperId p) const;

  std::size_t author_degree(AuthorId a) const;
  std::size_t paper_degree(PaperId p) const;

  const std::string& author_canonical(AuthorId a) const;
  // nullopt for entries without a homonym identifier.
  std::optional<std::string_view> author_suffix(AuthorId a) const;
  std::string author_full_key(AuthorId a) const;

  const std::string& paper_key(PaperId p) const;
  std::optional<int> paper_year(PaperId p) const;
  const std::string& paper_title(PaperId p) const;

  // All author nodes whose canonical name equals `canonical` (every homonym
  // variant plus the unsuffixed node), ascending. ASCII case folding when
  // `case_insensitive` is set.
  std::vector<AuthorId> authors_named(std::string_view canonical,
                                      bool case_insensitive = false) const;

  void check_author(AuthorId a) const;
  void check_paper(PaperId p) const;

  // Structural invariants: monotone offsets, in-range ids, strictly
  // ascending rows, symmetric adjacency, matching edge totals. Throws
  // std::logic_error on violation. Used after deserialization.
  void validate() const;

 private:
  BipartiteGraph() = default;
  friend class GraphBuilder;
  friend BipartiteGraph snapshot_to_graph(std::vector<std::uint64_t>,
                                          std::vector<std::uint64_t>,
                                          std::vector<PaperId>,
                                          std::vector<AuthorId>,
                                          std::vector<std::string>,
                                          std::vector<std::string>,
                                          std::vector<std::string>,
                                          std::vector<std::int64_t>,
                                          std::vector<std::string>);

  std::vector<std::uint64_t> author_offsets_;  // author_count + 1
  std::vector<std::uint64_t> paper_offsets_;   // paper_count + 1
  std::vector<PaperId> author_neighbors_;      // papers, grouped by author
  std::vector<AuthorId> paper_neighbors_;      // authors, grouped by paper

  std::vector<std::string> author_canonical_;
  std::vector<std::string> author_suffix_;  // "" means no identifier
  std::vector<std::string> paper_key_;
  std::vector<std::int64_t> paper_year_;  // kNoYear means absent
  std::vector<std::string> paper_title_;

  static constexpr std::int64_t kNoYear = INT64_MIN;
};

// Intersection of the two papers' author rows minus `exclude`, ascending.
// For p1 == p2 this is that paper's authors minus `exclude`.
std::vector<AuthorId> common_neighbors(const BipartiteGraph& g, PaperId p1,
                                       PaperId p2, const NodeSet& exclude);

// Number of author-author paths of length <= max_len between two distinct
// authors. In a bipartite graph only length-2 paths exist, so this is the
// count of papers the two authors share. Only max_len == 2 is supported;
// a1 == a2 is rejected.
std::size_t bounded_path_count(const BipartiteGraph& g, AuthorId a1,
                               AuthorId a2, int max_len = 2);

// Sorted-row intersection used by the neighbour queries; switches from the
// linear merge to galloping search when row lengths differ by more than 32x.
void intersect_sorted(std::span<const std::uint32_t> a,
                      std::span<const std::uint32_t> b,
                      std::vector<std::uint32_t>& out);

struct BuildStats {
  std::uint64_t duplicate_key_skips = 0;
  std::uint64_t zero_author_skips = 0;
  std::uint64_t duplicate_author_collapses = 0;
  std::uint64_t rejected_record_names = 0;  // record had an unusable name
};

// Single-writer builder. Insertion order defines node ids, so feeding the
// same record set sorted by dblp_key always reproduces the same graph.
class GraphBuilder {
 public:
  // Returns the existing id when (canonical, suffix) was interned before,
  // else a fresh dense id. Throws std::invalid_argument on an empty
  // canonical name.
  AuthorId intern_author(std::string_view canonical,
                         std::optional<std::string_view> suffix);
  AuthorId intern_author(const NormalizedName& name);

  // Adds one paper node plus one edge per distinct author of the record.
  // Duplicate author names within one record collapse to a single edge.
  // Returns nullopt (and counts a warning) for duplicate dblp_keys, records
  // without authors, and records whose every name normalizes to empty.
  std::optional<PaperId> add_paper(const PaperRecord& record);

  // Seals the builder. Throws std::logic_error when no paper was added or
  // when called twice.
  BipartiteGraph finalize();

  const BuildStats& stats() const noexcept { return stats_; }
  std::size_t author_count() const noexcept { return author_canonical_.size(); }
  std::size_t paper_count() const noexcept { return paper_key_.size(); }

 private:
  bool finalized_ = false;
  BuildStats stats_;

  std::unordered_map<std::string, AuthorId> intern_;  // full_key -> id
  std::vector<std::string> author_canonical_;
  std::vector<std::string> author_suffix_;

  std::vector<std::string> paper_key_;
  std::vector<std::int64_t> paper_year_;
  std::vector<std::string> paper_title_;
  std::unordered_map<std::string, PaperId> paper_by_key_;

  std::vector<std::uint64_t> paper_offsets_{0};
  std::vector<AuthorId> paper_neighbors_;
};

// Constructs a graph from pre-validated CSR parts; snapshot loading helper.
BipartiteGraph snapshot_to_graph(
    std::vector<std::uint64_t> author_offsets,
    std::vector<std::uint64_t> paper_offsets,
    std::vector<PaperId> author_neighbors,
    std::vector<AuthorId> paper_neighbors,
    std::vector<std::string> author_canonical,
    std::vector<std::string> author_suffix, std::vector<std::string> paper_key,
    std::vector<std::int64_t> paper_year, std::vector<std::string> paper_title);

}  // namespace coref
