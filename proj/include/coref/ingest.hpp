#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "coref/io.hpp"
#include "coref/record.hpp"

namespace coref {

struct IngestStats {
  std::uint64_t records_emitted = 0;
  std::uint64_t skipped_kind = 0;           // www, proceedings, data, other
  std::uint64_t missing_title_skips = 0;
  std::uint64_t missing_key_skips = 0;
  std::uint64_t unknown_entity_warnings = 0;
  std::uint64_t empty_author_warnings = 0;  // fixture: empty '|' token
  std::uint64_t bad_year_warnings = 0;      // non-numeric year content
};

// Pull iterator over bibliographic records.
class RecordReader {
 public:
  virtual ~RecordReader() = default;
  virtual std::optional<PaperRecord> next() = 0;
  virtual const IngestStats& stats() const = 0;
};

// Streaming DBLP XML reader. Emits one PaperRecord per accepted record kind
// in document order; peak memory stays proportional to the largest single
// record. Malformed XML raises ParseError with the byte offset.
std::unique_ptr<RecordReader> parse_stream(std::unique_ptr<ByteReader> input);

// Fixture reader: UTF-8 TSV, one record per line,
//   dblp_key<TAB>year<TAB>title<TAB>author1|author2|...
// Empty year field allowed; empty author tokens are dropped with a warning.
// A line with the wrong column count raises ParseError naming the line.
std::unique_ptr<RecordReader> load_fixture(const std::filesystem::path& path);
std::unique_ptr<RecordReader> load_fixture_text(std::string text);

// Serializes records into the fixture TSV format. Throws
// std::invalid_argument when a field cannot be represented (tab or newline
// anywhere, '|' inside an author name).
void write_fixture(std::span<const PaperRecord> records, std::ostream& out);
std::string write_fixture(std::span<const PaperRecord> records);

// Drains a reader.
std::vector<PaperRecord> read_all(RecordReader& reader);

}  // namespace coref
