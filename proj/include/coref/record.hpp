#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coref {

// Publication kinds that carry personal authorship. Homepage (`www`),
// `proceedings` and `data` records are filtered out during ingestion.
enum class RecordKind {
  article,
  inproceedings,
  incollection,
  book,
  phdthesis,
  mastersthesis,
};

const char* to_string(RecordKind kind);

// Maps an element name to an accepted record kind, or nullopt when the kind
// is not ingested.
std::optional<RecordKind> record_kind_from(std::string_view name);

// One bibliographic record as it appears in the source, author names raw and
// in document order.
struct PaperRecord {
  std::string dblp_key;
  RecordKind kind = RecordKind::article;
  std::optional<int> year;
  std::string title;
  std::vector<std::string> authors;
};

}  // namespace coref
