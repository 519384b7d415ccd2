#include "coref/graph.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <utility>

namespace coref {

namespace {

// First index in [lo, row.size()) with row[i] >= key, found by doubling
// steps from lo before the final binary search.
std::size_t gallop_lower_bound(std::span<const std::uint32_t> row,
                               std::size_t lo, std::uint32_t key) {
  std::size_t step = 1;
  std::size_t hi = lo;
  while (hi < row.size() && row[hi] < key) {
    lo = hi + 1;
    hi += step;
    step *= 2;
  }
  hi = std::min(hi, row.size());
  return static_cast<std::size_t>(
      std::lower_bound(row.begin() + lo, row.begin() + hi, key) - row.begin());
}

void intersect_gallop(std::span<const std::uint32_t> small,
                      std::span<const std::uint32_t> large,
                      std::vector<std::uint32_t>& out) {
  std::size_t pos = 0;
  for (std::uint32_t key : small) {
    pos = gallop_lower_bound(large, pos, key);
    if (pos == large.size()) return;
    if (large[pos] == key) {
      out.push_back(key);
      ++pos;
    }
  }
}

bool equals_ascii_ci(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::string AuthorNode::full_key() const {
  NormalizedName n{canonical_name, homonym_suffix};
  return n.full_key();
}

NodeSet::NodeSet(std::vector<std::uint32_t> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool NodeSet::contains(std::uint32_t id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

void intersect_sorted(std::span<const std::uint32_t> a,
                      std::span<const std::uint32_t> b,
                      std::vector<std::uint32_t>& out) {
  if (a.size() > b.size()) std::swap(a, b);
  if (a.empty()) return;
  if (b.size() / a.size() > 32) {
    intersect_gallop(a, b, out);
    return;
  }
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      out.push_back(a[i]);
      ++i;
      ++j;
    }
  }
}

void BipartiteGraph::check_author(AuthorId a) const {
  if (a >= author_count()) {
    throw std::out_of_range("author id " + std::to_string(a) +
                            " out of range");
  }
}

void BipartiteGraph::check_paper(PaperId p) const {
  if (p >= paper_count()) {
    throw std::out_of_range("paper id " + std::to_string(p) + " out of range");
  }
}

std::span<const PaperId> BipartiteGraph::papers_of(AuthorId a) const {
  check_author(a);
  return std::span<const PaperId>(author_neighbors_)
      .subspan(author_offsets_[a], author_offsets_[a + 1] - author_offsets_[a]);
}

std::span<const AuthorId> BipartiteGraph::authors_of(PaperId p) const {
  check_paper(p);
  return std::span<const AuthorId>(paper_neighbors_)
      .subspan(paper_offsets_[p], paper_offsets_[p + 1] - paper_offsets_[p]);
}

std::size_t BipartiteGraph::author_degree(AuthorId a) const {
  check_author(a);
  return author_offsets_[a + 1] - author_offsets_[a];
}

std::size_t BipartiteGraph::paper_degree(PaperId p) const {
  check_paper(p);
  return paper_offsets_[p + 1] - paper_offsets_[p];
}

const std::string& BipartiteGraph::author_canonical(AuthorId a) const {
  check_author(a);
  return author_canonical_[a];
}

std::optional<std::string_view> BipartiteGraph::author_suffix(AuthorId a) const {
  check_author(a);
  if (author_suffix_[a].empty()) return std::nullopt;
  return std::string_view(author_suffix_[a]);
}

std::string BipartiteGraph::author_full_key(AuthorId a) const {
  check_author(a);
  if (author_suffix_[a].empty()) return author_canonical_[a];
  return author_canonical_[a] + " " + author_suffix_[a];
}

const std::string& BipartiteGraph::paper_key(PaperId p) const {
  check_paper(p);
  return paper_key_[p];
}

std::optional<int> BipartiteGraph::paper_year(PaperId p) const {
  check_paper(p);
  if (paper_year_[p] == kNoYear) return std::nullopt;
  return static_cast<int>(paper_year_[p]);
}

const std::string& BipartiteGraph::paper_title(PaperId p) const {
  check_paper(p);
  return paper_title_[p];
}

std::vector<AuthorId> BipartiteGraph::authors_named(
    std::string_view canonical, bool case_insensitive) const {
  std::vector<AuthorId> out;
  for (AuthorId a = 0; a < author_count(); ++a) {
    if (case_insensitive ? equals_ascii_ci(author_canonical_[a], canonical)
                         : author_canonical_[a] == canonical) {
      out.push_back(a);
    }
  }
  return out;
}

void BipartiteGraph::validate() const {
  auto check_csr = [](const std::vector<std::uint64_t>& offsets,
                      std::size_t row_count, std::size_t entries,
                      const char* what) {
    if (offsets.size() != row_count + 1 || offsets.front() != 0 ||
        offsets.back() != entries) {
      throw std::logic_error(std::string("bad offsets for ") + what);
    }
    for (std::size_t i = 0; i + 1 < offsets.size(); ++i) {
      if (offsets[i] > offsets[i + 1]) {
        throw std::logic_error(std::string("non-monotone offsets for ") + what);
      }
    }
  };
  check_csr(author_offsets_, author_count(), author_neighbors_.size(),
            "authors");
  check_csr(paper_offsets_, paper_count(), paper_neighbors_.size(), "papers");
  if (author_neighbors_.size() != paper_neighbors_.size()) {
    throw std::logic_error("edge totals differ between directions");
  }

  auto check_rows = [](const std::vector<std::uint64_t>& offsets,
                       const auto& neighbors, std::size_t other_count,
                       const char* what) {
    for (std::size_t r = 0; r + 1 < offsets.size(); ++r) {
      for (std::size_t i = offsets[r]; i < offsets[r + 1]; ++i) {
        if (neighbors[i] >= other_count) {
          throw std::logic_error(std::string("id out of range in ") + what);
        }
        if (i > offsets[r] && neighbors[i - 1] >= neighbors[i]) {
          throw std::logic_error(std::string("row not strictly ascending in ") +
                                 what);
        }
      }
    }
  };
  check_rows(author_offsets_, author_neighbors_, paper_count(), "author rows");
  check_rows(paper_offsets_, paper_neighbors_, author_count(), "paper rows");

  // Symmetry: every (paper, author) edge must exist in both directions.
  for (PaperId p = 0; p < paper_count(); ++p) {
    for (AuthorId a : authors_of(p)) {
      auto row = papers_of(a);
      if (!std::binary_search(row.begin(), row.end(), p)) {
        throw std::logic_error("asymmetric edge");
      }
    }
  }
}

std::vector<AuthorId> common_neighbors(const BipartiteGraph& g, PaperId p1,
                                       PaperId p2, const NodeSet& exclude) {
  auto r1 = g.authors_of(p1);
  auto r2 = g.authors_of(p2);

  std::vector<AuthorId> out;
  if (p1 == p2) {
    out.reserve(r1.size());
    for (AuthorId a : r1) {
      if (!exclude.contains(a)) out.push_back(a);
    }
    return out;
  }
  intersect_sorted(r1, r2, out);
  if (!exclude.empty()) {
    out.erase(std::remove_if(out.begin(), out.end(),
                             [&](AuthorId a) { return exclude.contains(a); }),
              out.end());
  }
  return out;
}

std::size_t bounded_path_count(const BipartiteGraph& g, AuthorId a1,
                               AuthorId a2, int max_len) {
  g.check_author(a1);
  g.check_author(a2);
  if (a1 == a2) {
    throw std::invalid_argument("path count requires two distinct authors");
  }
  if (max_len != 2) {
    throw std::invalid_argument("unsupported path bound; only max_len=2");
  }
  // No length-1 author-author path can exist in a bipartite graph, so every
  // path is author-paper-author: one per shared paper.
  std::vector<std::uint32_t> shared;
  intersect_sorted(g.papers_of(a1), g.papers_of(a2), shared);
  return shared.size();
}

AuthorId GraphBuilder::intern_author(std::string_view canonical,
                                     std::optional<std::string_view> suffix) {
  if (finalized_) {
    throw std::logic_error("builder already finalized");
  }
  if (canonical.empty()) {
    throw std::invalid_argument("author name empty after normalization");
  }
  if (suffix && !is_homonym_suffix(*suffix)) {
    throw std::invalid_argument(
        "homonym suffix must be exactly four decimal digits");
  }
  std::string key(canonical);
  if (suffix) {
    key += ' ';
    key += *suffix;
  }
  auto [it, inserted] =
      intern_.try_emplace(std::move(key),
                          static_cast<AuthorId>(author_canonical_.size()));
  if (inserted) {
    author_canonical_.emplace_back(canonical);
    author_suffix_.emplace_back(suffix ? std::string(*suffix) : std::string());
  }
  return it->second;
}

AuthorId GraphBuilder::intern_author(const NormalizedName& name) {
  return intern_author(name.canonical,
                       name.suffix ? std::optional<std::string_view>(*name.suffix)
                                   : std::nullopt);
}

std::optional<PaperId> GraphBuilder::add_paper(const PaperRecord& record) {
  if (finalized_) {
    throw std::logic_error("builder already finalized");
  }
  if (record.authors.empty()) {
    ++stats_.zero_author_skips;
    return std::nullopt;
  }
  if (paper_by_key_.contains(record.dblp_key)) {
    ++stats_.duplicate_key_skips;
    return std::nullopt;
  }

  // Normalize every name before interning anything, so a rejected record
  // leaves no trace in the author table.
  std::vector<NormalizedName> names;
  names.reserve(record.authors.size());
  for (const std::string& raw : record.authors) {
    try {
      names.push_back(normalize_name(raw));
    } catch (const std::invalid_argument&) {
      ++stats_.rejected_record_names;
      return std::nullopt;
    }
  }
  std::vector<AuthorId> authors;
  authors.reserve(names.size());
  for (const NormalizedName& name : names) {
    authors.push_back(intern_author(name));
  }
  std::sort(authors.begin(), authors.end());
  auto last = std::unique(authors.begin(), authors.end());
  stats_.duplicate_author_collapses +=
      static_cast<std::uint64_t>(authors.end() - last);
  authors.erase(last, authors.end());

  PaperId id = static_cast<PaperId>(paper_key_.size());
  paper_by_key_.emplace(record.dblp_key, id);
  paper_key_.push_back(record.dblp_key);
  paper_year_.push_back(record.year ? *record.year
                                    : BipartiteGraph::kNoYear);
  paper_title_.push_back(record.title);
  paper_neighbors_.insert(paper_neighbors_.end(), authors.begin(),
                          authors.end());
  paper_offsets_.push_back(paper_neighbors_.size());
  return id;
}

BipartiteGraph GraphBuilder::finalize() {
  if (finalized_) {
    throw std::logic_error("builder already finalized");
  }
  if (paper_key_.empty()) {
    throw std::logic_error("cannot finalize an empty builder");
  }
  finalized_ = true;

  BipartiteGraph g;
  g.paper_offsets_ = std::move(paper_offsets_);
  g.paper_neighbors_ = std::move(paper_neighbors_);
  g.author_canonical_ = std::move(author_canonical_);
  g.author_suffix_ = std::move(author_suffix_);
  g.paper_key_ = std::move(paper_key_);
  g.paper_year_ = std::move(paper_year_);
  g.paper_title_ = std::move(paper_title_);

  // Counting pass, then fill. Papers are appended in increasing id order, so
  // each author's row comes out sorted without an extra sort.
  std::size_t n_authors = g.author_canonical_.size();
  g.author_offsets_.assign(n_authors + 1, 0);
  for (AuthorId a : g.paper_neighbors_) {
    ++g.author_offsets_[a + 1];
  }
  for (std::size_t i = 1; i <= n_authors; ++i) {
    g.author_offsets_[i] += g.author_offsets_[i - 1];
  }
  g.author_neighbors_.resize(g.paper_neighbors_.size());
  std::vector<std::uint64_t> cursor(g.author_offsets_.begin(),
                                    g.author_offsets_.end() - 1);
  for (PaperId p = 0; p + 1 < g.paper_offsets_.size(); ++p) {
    for (std::uint64_t i = g.paper_offsets_[p]; i < g.paper_offsets_[p + 1];
         ++i) {
      AuthorId a = g.paper_neighbors_[i];
      g.author_neighbors_[cursor[a]++] = p;
    }
  }
  return g;
}

BipartiteGraph snapshot_to_graph(std::vector<std::uint64_t> author_offsets,
                                 std::vector<std::uint64_t> paper_offsets,
                                 std::vector<PaperId> author_neighbors,
                                 std::vector<AuthorId> paper_neighbors,
                                 std::vector<std::string> author_canonical,
                                 std::vector<std::string> author_suffix,
                                 std::vector<std::string> paper_key,
                                 std::vector<std::int64_t> paper_year,
                                 std::vector<std::string> paper_title) {
  BipartiteGraph g;
  g.author_offsets_ = std::move(author_offsets);
  g.paper_offsets_ = std::move(paper_offsets);
  g.author_neighbors_ = std::move(author_neighbors);
  g.paper_neighbors_ = std::move(paper_neighbors);
  g.author_canonical_ = std::move(author_canonical);
  g.author_suffix_ = std::move(author_suffix);
  g.paper_key_ = std::move(paper_key);
  g.paper_year_ = std::move(paper_year);
  g.paper_title_ = std::move(paper_title);
  g.validate();
  return g;
}

}  // namespace coref
