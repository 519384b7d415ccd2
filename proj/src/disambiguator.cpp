#include "coref/disambiguator.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace coref {

MentionSet find_mentions(const BipartiteGraph& g,
                         std::string_view query_canonical,
                         bool case_insensitive) {
  MentionSet ms;
  ms.query = std::string(query_canonical);

  std::vector<AuthorId> nodes = g.authors_named(query_canonical,
                                                case_insensitive);
  ms.homonym_nodes = NodeSet(std::vector<std::uint32_t>(nodes.begin(),
                                                        nodes.end()));

  // (paper, node) pairs sorted by paper then node; mention ids follow that
  // order, so they are stable for a given graph and query.
  std::vector<std::pair<PaperId, AuthorId>> occurrences;
  for (AuthorId node : nodes) {
    for (PaperId p : g.papers_of(node)) {
      occurrences.emplace_back(p, node);
    }
  }
  std::sort(occurrences.begin(), occurrences.end());

  ms.mentions.reserve(occurrences.size());
  for (auto [paper, node] : occurrences) {
    Mention m;
    m.mention_id = static_cast<MentionId>(ms.mentions.size());
    m.paper_id = paper;
    m.author_node = node;
    if (auto suffix = g.author_suffix(node)) {
      m.suffix = std::string(*suffix);
    }
    ms.mentions.push_back(std::move(m));
  }
  return ms;
}

SimilarityScore two_step_score(const BipartiteGraph& g, const Mention& m1,
                               const Mention& m2, Measure measure,
                               const NodeSet& exclude,
                               std::uint64_t* degenerate_terms) {
  if (m1.mention_id == m2.mention_id) {
    throw std::invalid_argument("cannot score a mention against itself");
  }
  return score_pair(g, measure, m1.paper_id, m2.paper_id, exclude,
                    degenerate_terms);
}

bool classify(const SimilarityScore& score, double rho) {
  return score.value > rho;
}

namespace {

// Index of the k-th pair in the (a < b) lexicographic enumeration of all
// unordered pairs over n mentions.
std::pair<std::uint32_t, std::uint32_t> pair_at(std::uint64_t k,
                                                std::uint64_t n) {
  // Walk rows; row a holds n - a - 1 pairs. The row count is small enough
  // (mentions per query, not graph nodes) that the linear walk is free
  // compared to the scoring work behind it.
  std::uint64_t a = 0;
  std::uint64_t row = n - 1;
  while (k >= row) {
    k -= row;
    ++a;
    --row;
  }
  return {static_cast<std::uint32_t>(a),
          static_cast<std::uint32_t>(a + 1 + k)};
}

}  // namespace

std::vector<CandidatePair> score_all_pairs(const BipartiteGraph& g,
                                           const MentionSet& ms,
                                           Measure measure, unsigned threads,
                                           std::uint64_t* degenerate_terms) {
  const auto& mentions = ms.mentions;
  if (mentions.size() < 2) {
    throw std::invalid_argument("nothing to disambiguate");
  }
  std::uint64_t n = mentions.size();
  std::uint64_t total = n * (n - 1) / 2;
  std::vector<CandidatePair> pairs(total);

  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  threads = static_cast<unsigned>(
      std::min<std::uint64_t>(threads, std::max<std::uint64_t>(total, 1)));

  std::vector<std::uint64_t> degenerate_per_worker(threads, 0);
  auto worker = [&](unsigned w) {
    std::uint64_t begin = total * w / threads;
    std::uint64_t end = total * (w + 1) / threads;
    if (begin >= end) return;
    auto [a, b] = pair_at(begin, n);
    for (std::uint64_t k = begin; k < end; ++k) {
      CandidatePair& out = pairs[k];
      out.a = a;
      out.b = b;
      out.same_paper = mentions[a].paper_id == mentions[b].paper_id;
      out.score = two_step_score(g, mentions[a], mentions[b], measure,
                                 ms.homonym_nodes, &degenerate_per_worker[w]);
      if (++b == n) {
        ++a;
        b = a + 1;
      }
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back(worker, w);
    }
    for (auto& t : pool) t.join();
  }
  if (degenerate_terms) {
    for (std::uint64_t d : degenerate_per_worker) *degenerate_terms += d;
  }
  return pairs;
}

void apply_threshold(std::span<CandidatePair> pairs, double rho) {
  for (CandidatePair& pair : pairs) {
    pair.predicted_same = classify(pair.score, rho);
  }
}

std::vector<CandidatePair> run_all_pairs(const BipartiteGraph& g,
                                         const MentionSet& ms, Measure measure,
                                         double rho, unsigned threads) {
  auto pairs = score_all_pairs(g, ms, measure, threads);
  apply_threshold(pairs, rho);
  return pairs;
}

std::size_t ClusterAssignment::cluster_count() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < representative.size(); ++i) {
    if (representative[i] == i) ++count;
  }
  return count;
}

ClusterAssignment transitive_closure(std::size_t mention_count,
                                     std::span<const CandidatePair> pairs) {
  std::vector<MentionId> parent(mention_count);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<std::uint32_t> size(mention_count, 1);

  auto find = [&](MentionId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  for (const CandidatePair& pair : pairs) {
    if (pair.a >= mention_count || pair.b >= mention_count) {
      throw std::invalid_argument("pair references a mention outside the set");
    }
    if (!pair.predicted_same.value_or(false)) continue;
    MentionId ra = find(pair.a);
    MentionId rb = find(pair.b);
    if (ra == rb) continue;
    if (size[ra] < size[rb]) std::swap(ra, rb);
    parent[rb] = ra;
    size[ra] += size[rb];
  }

  // Canonicalize every root to the smallest member id so the assignment is
  // independent of union order.
  std::vector<MentionId> lowest(mention_count);
  std::iota(lowest.begin(), lowest.end(), 0);
  for (MentionId m = 0; m < mention_count; ++m) {
    MentionId root = find(m);
    lowest[root] = std::min(lowest[root], m);
  }
  ClusterAssignment assignment;
  assignment.representative.resize(mention_count);
  for (MentionId m = 0; m < mention_count; ++m) {
    assignment.representative[m] = lowest[find(m)];
  }
  return assignment;
}

}  // namespace coref
