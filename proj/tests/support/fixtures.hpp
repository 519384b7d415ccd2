#pragma once

#include <random>
#include <string>
#include <vector>

#include "coref/graph.hpp"
#include "coref/record.hpp"

namespace coref::testing {

// Deterministic helpers shared by the unit and acceptance suites. All
// randomness flows through the standard mt19937 engine with explicit modulo
// reduction, so a seed pins the output on every platform.
struct Rng {
  std::mt19937 engine;

  explicit Rng(std::uint32_t seed) : engine(seed) {}

  std::uint32_t below(std::uint32_t n) { return engine() % n; }

  double unit() {
    return static_cast<double>(engine()) /
           (static_cast<double>(std::mt19937::max()) + 1.0);
  }
};

inline PaperRecord rec(std::string key, std::vector<std::string> authors,
                       std::string title = "t", std::optional<int> year = {}) {
  PaperRecord record;
  record.dblp_key = std::move(key);
  record.title = std::move(title);
  record.year = year;
  record.authors = std::move(authors);
  return record;
}

inline BipartiteGraph make_graph(const std::vector<PaperRecord>& records) {
  GraphBuilder builder;
  for (const PaperRecord& record : records) builder.add_paper(record);
  return builder.finalize();
}

// Random small record set: up to `max_authors` names, up to `max_papers`
// papers with 1..4 authors each.
inline std::vector<PaperRecord> random_records(Rng& rng,
                                               std::uint32_t max_authors = 12,
                                               std::uint32_t max_papers = 8) {
  std::uint32_t n_authors = 2 + rng.below(max_authors - 1);
  std::uint32_t n_papers = 1 + rng.below(max_papers);
  std::vector<PaperRecord> records;
  for (std::uint32_t p = 0; p < n_papers; ++p) {
    std::uint32_t k = 1 + rng.below(std::min<std::uint32_t>(4, n_authors));
    std::vector<std::string> authors;
    for (std::uint32_t i = 0; i < k; ++i) {
      authors.push_back("Author N" + std::to_string(rng.below(n_authors)));
    }
    records.push_back(rec("rand/p" + std::to_string(p), std::move(authors)));
  }
  return records;
}

}  // namespace coref::testing
