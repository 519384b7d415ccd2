#include "coref/record.hpp"

namespace coref {

const char* to_string(RecordKind kind) {
  switch (kind) {
    case RecordKind::article: return "article";
    case RecordKind::inproceedings: return "inproceedings";
    case RecordKind::incollection: return "incollection";
    case RecordKind::book: return "book";
    case RecordKind::phdthesis: return "phdthesis";
    case RecordKind::mastersthesis: return "mastersthesis";
  }
  return "article";
}

std::optional<RecordKind> record_kind_from(std::string_view name) {
  if (name == "article") return RecordKind::article;
  if (name == "inproceedings") return RecordKind::inproceedings;
  if (name == "incollection") return RecordKind::incollection;
  if (name == "book") return RecordKind::book;
  if (name == "phdthesis") return RecordKind::phdthesis;
  if (name == "mastersthesis") return RecordKind::mastersthesis;
  return std::nullopt;
}

}  // namespace coref
