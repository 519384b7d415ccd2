#include "coref/snapshot.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include "coref/common.hpp"

namespace coref {

namespace {

constexpr char kMagic[4] = {'C', 'R', 'G', '1'};
constexpr std::uint16_t kVersion = 1;

class Writer {
 public:
  void u8(std::uint8_t v) { bytes_.push_back(static_cast<char>(v)); }

  template <typename T>
  void le(T v) {
    // Little-endian, byte by byte; independent of host layout.
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      bytes_.push_back(static_cast<char>((static_cast<std::uint64_t>(v) >>
                                          (8 * i)) & 0xFF));
    }
  }

  void str(const std::string& s) {
    le<std::uint32_t>(static_cast<std::uint32_t>(s.size()));
    bytes_.append(s);
  }

  void raw(const char* data, std::size_t n) { bytes_.append(data, n); }

  std::string take() { return std::move(bytes_); }

 private:
  std::string bytes_;
};

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(bytes_[pos_++]);
  }

  template <typename T>
  T le() {
    need(sizeof(T));
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      v |= static_cast<std::uint64_t>(
               static_cast<std::uint8_t>(bytes_[pos_ + i]))
           << (8 * i);
    }
    pos_ += sizeof(T);
    return static_cast<T>(v);
  }

  std::string str() {
    std::uint32_t n = le<std::uint32_t>();
    need(n);
    std::string s(bytes_.substr(pos_, n));
    pos_ += n;
    return s;
  }

  void raw(char* dst, std::size_t n) {
    need(n);
    std::memcpy(dst, bytes_.data() + pos_, n);
    pos_ += n;
  }

  bool exhausted() const { return pos_ == bytes_.size(); }
  std::size_t pos() const { return pos_; }

 private:
  void need(std::size_t n) {
    if (bytes_.size() - pos_ < n) {
      throw ParseError("truncated snapshot", pos_);
    }
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string serialize_snapshot(const BipartiteGraph& g) {
  Writer w;
  w.raw(kMagic, sizeof(kMagic));
  w.le<std::uint16_t>(kVersion);
  w.le<std::uint64_t>(g.author_count());
  w.le<std::uint64_t>(g.paper_count());
  w.le<std::uint64_t>(g.edge_count());

  // Offsets are rebuilt from the degree accessors rather than read out of
  // graph internals.
  std::uint64_t running = 0;
  w.le<std::uint64_t>(0);
  for (AuthorId a = 0; a < g.author_count(); ++a) {
    running += g.author_degree(a);
    w.le<std::uint64_t>(running);
  }
  w.le<std::uint64_t>(0);
  running = 0;
  for (PaperId p = 0; p < g.paper_count(); ++p) {
    running += g.paper_degree(p);
    w.le<std::uint64_t>(running);
  }
  for (AuthorId a = 0; a < g.author_count(); ++a) {
    for (PaperId p : g.papers_of(a)) w.le<std::uint32_t>(p);
  }
  for (PaperId p = 0; p < g.paper_count(); ++p) {
    for (AuthorId a : g.authors_of(p)) w.le<std::uint32_t>(a);
  }

  for (AuthorId a = 0; a < g.author_count(); ++a) {
    w.str(g.author_canonical(a));
    auto suffix = g.author_suffix(a);
    w.u8(suffix ? 1 : 0);
    if (suffix) w.raw(suffix->data(), 4);
  }
  for (PaperId p = 0; p < g.paper_count(); ++p) {
    w.str(g.paper_key(p));
    auto year = g.paper_year(p);
    w.u8(year ? 1 : 0);
    if (year) w.le<std::int32_t>(*year);
    w.str(g.paper_title(p));
  }
  return w.take();
}

BipartiteGraph deserialize_snapshot(std::string_view bytes) {
  Reader r(bytes);
  char magic[4];
  r.raw(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw ParseError("bad snapshot magic", 0);
  }
  std::uint16_t version = r.le<std::uint16_t>();
  if (version != kVersion) {
    throw ParseError("unsupported snapshot version " + std::to_string(version),
                     4);
  }
  std::uint64_t n_authors = r.le<std::uint64_t>();
  std::uint64_t n_papers = r.le<std::uint64_t>();
  std::uint64_t n_edges = r.le<std::uint64_t>();

  auto read_offsets = [&](std::uint64_t rows) {
    std::vector<std::uint64_t> offsets(rows + 1);
    for (auto& o : offsets) o = r.le<std::uint64_t>();
    return offsets;
  };
  auto read_ids = [&](std::uint64_t count) {
    std::vector<std::uint32_t> ids(count);
    for (auto& id : ids) id = r.le<std::uint32_t>();
    return ids;
  };

  auto author_offsets = read_offsets(n_authors);
  auto paper_offsets = read_offsets(n_papers);
  auto author_neighbors = read_ids(n_edges);
  auto paper_neighbors = read_ids(n_edges);

  std::vector<std::string> canonical(n_authors);
  std::vector<std::string> suffix(n_authors);
  for (std::uint64_t a = 0; a < n_authors; ++a) {
    canonical[a] = r.str();
    if (r.u8()) {
      suffix[a].resize(4);
      r.raw(suffix[a].data(), 4);
    }
  }
  std::vector<std::string> key(n_papers);
  std::vector<std::int64_t> year(n_papers, INT64_MIN);
  std::vector<std::string> title(n_papers);
  for (std::uint64_t p = 0; p < n_papers; ++p) {
    key[p] = r.str();
    if (r.u8()) year[p] = r.le<std::int32_t>();
    title[p] = r.str();
  }
  if (!r.exhausted()) {
    throw ParseError("trailing bytes after snapshot", r.pos());
  }
  return snapshot_to_graph(std::move(author_offsets), std::move(paper_offsets),
                           std::move(author_neighbors),
                           std::move(paper_neighbors), std::move(canonical),
                           std::move(suffix), std::move(key), std::move(year),
                           std::move(title));
}

void save_snapshot(const BipartiteGraph& g,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  std::string bytes = serialize_snapshot(g);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

BipartiteGraph load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize_snapshot(buf.str());
}

}  // namespace coref
