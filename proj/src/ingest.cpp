#include "coref/ingest.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "coref/common.hpp"
#include "coref/xml.hpp"

namespace coref {

namespace {

std::optional<int> parse_year(std::string_view text) {
  std::size_t begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return std::nullopt;
  std::size_t end = text.find_last_not_of(" \t\r\n") + 1;
  int value = 0;
  auto [ptr, ec] =
      std::from_chars(text.data() + begin, text.data() + end, value);
  if (ec != std::errc() || ptr != text.data() + end) return std::nullopt;
  return value;
}

class DblpXmlReader final : public RecordReader {
 public:
  explicit DblpXmlReader(std::unique_ptr<ByteReader> input)
      : parser_(std::move(input)) {
    parser_.set_capture_text(false);
  }

  std::optional<PaperRecord> next() override {
    while (true) {
      XmlPullParser::Event ev = parser_.next();
      switch (ev) {
        case XmlPullParser::Event::end_document:
          stats_.unknown_entity_warnings = parser_.unknown_entity_count();
          return std::nullopt;

        case XmlPullParser::Event::start_element:
          ++depth_;
          if (depth_ == 2) {
            start_record();
          } else if (depth_ == 3 && in_record_) {
            start_field(parser_.name());
          }
          break;

        case XmlPullParser::Event::text:
          if (field_ != Field::none) field_buffer_ += parser_.text();
          break;

        case XmlPullParser::Event::end_element: {
          --depth_;
          if (depth_ == 2 && field_ != Field::none) {
            end_field();
          } else if (depth_ == 1 && in_record_) {
            in_record_ = false;
            if (accept_record()) {
              ++stats_.records_emitted;
              stats_.unknown_entity_warnings = parser_.unknown_entity_count();
              return std::move(record_);
            }
          }
          break;
        }
      }
    }
  }

  const IngestStats& stats() const override { return stats_; }

 private:
  enum class Field { none, author, title, year };

  void start_record() {
    field_ = Field::none;
    auto kind = record_kind_from(parser_.name());
    if (!kind) {
      ++stats_.skipped_kind;
      in_record_ = false;
      return;
    }
    in_record_ = true;
    record_ = PaperRecord{};
    record_.kind = *kind;
    for (const XmlAttribute& attr : parser_.attributes()) {
      if (attr.name == "key") {
        record_.dblp_key = attr.value;
        break;
      }
    }
  }

  void start_field(const std::string& element) {
    if (element == "author") {
      field_ = Field::author;
    } else if (element == "title") {
      field_ = Field::title;
    } else if (element == "year") {
      field_ = Field::year;
    } else {
      return;
    }
    field_buffer_.clear();
    parser_.set_capture_text(true);
  }

  void end_field() {
    switch (field_) {
      case Field::author:
        record_.authors.push_back(field_buffer_);
        break;
      case Field::title:
        // First title wins; DBLP records carry at most one.
        if (record_.title.empty()) record_.title = field_buffer_;
        break;
      case Field::year:
        if (!record_.year) {
          record_.year = parse_year(field_buffer_);
          if (!record_.year) ++stats_.bad_year_warnings;
        }
        break;
      case Field::none:
        break;
    }
    field_ = Field::none;
    parser_.set_capture_text(false);
  }

  bool accept_record() {
    if (record_.dblp_key.empty()) {
      ++stats_.missing_key_skips;
      return false;
    }
    if (record_.title.empty()) {
      ++stats_.missing_title_skips;
      return false;
    }
    return true;
  }

  XmlPullParser parser_;
  IngestStats stats_;
  int depth_ = 0;
  bool in_record_ = false;
  Field field_ = Field::none;
  std::string field_buffer_;
  PaperRecord record_;
};

class FixtureReader final : public RecordReader {
 public:
  explicit FixtureReader(std::unique_ptr<std::istream> input)
      : input_(std::move(input)) {}

  std::optional<PaperRecord> next() override {
    std::string line;
    while (std::getline(*input_, line)) {
      ++line_no_;
      std::size_t line_start = byte_offset_;
      byte_offset_ += line.size() + 1;
      if (!line.empty() && line.back() == '\r') line.pop_back();

      std::vector<std::string_view> columns;
      std::string_view view(line);
      std::size_t start = 0;
      while (true) {
        std::size_t tab = view.find('\t', start);
        if (tab == std::string_view::npos) {
          columns.push_back(view.substr(start));
          break;
        }
        columns.push_back(view.substr(start, tab - start));
        start = tab + 1;
      }
      if (columns.size() != 4) {
        throw ParseError("line " + std::to_string(line_no_) + ": expected 4 " +
                             "tab-separated columns, got " +
                             std::to_string(columns.size()),
                         line_start);
      }
      if (columns[0].empty()) {
        throw ParseError("line " + std::to_string(line_no_) + ": empty key",
                         line_start);
      }

      PaperRecord record;
      record.dblp_key = std::string(columns[0]);
      record.kind = RecordKind::article;
      if (!columns[1].empty()) {
        record.year = parse_year(columns[1]);
        if (!record.year) {
          throw ParseError(
              "line " + std::to_string(line_no_) + ": bad year field",
              line_start);
        }
      }
      record.title = std::string(columns[2]);

      std::string_view authors = columns[3];
      std::size_t pos = 0;
      while (pos <= authors.size()) {
        std::size_t bar = authors.find('|', pos);
        std::string_view token = authors.substr(
            pos, bar == std::string_view::npos ? bar : bar - pos);
        if (token.empty()) {
          // Counts once per dropped token, including a fully empty column.
          ++stats_.empty_author_warnings;
        } else {
          record.authors.emplace_back(token);
        }
        if (bar == std::string_view::npos) break;
        pos = bar + 1;
      }

      ++stats_.records_emitted;
      return record;
    }
    return std::nullopt;
  }

  const IngestStats& stats() const override { return stats_; }

 private:
  std::unique_ptr<std::istream> input_;
  IngestStats stats_;
  std::uint64_t line_no_ = 0;
  std::size_t byte_offset_ = 0;
};

}  // namespace

std::unique_ptr<RecordReader> parse_stream(std::unique_ptr<ByteReader> input) {
  return std::make_unique<DblpXmlReader>(std::move(input));
}

std::unique_ptr<RecordReader> load_fixture(const std::filesystem::path& path) {
  auto stream = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!*stream) {
    throw std::runtime_error("cannot open " + path.string());
  }
  return std::make_unique<FixtureReader>(std::move(stream));
}

std::unique_ptr<RecordReader> load_fixture_text(std::string text) {
  return std::make_unique<FixtureReader>(
      std::make_unique<std::istringstream>(std::move(text)));
}

namespace {

void check_fixture_field(const std::string& value, bool is_author) {
  if (value.find('\t') != std::string::npos ||
      value.find('\n') != std::string::npos ||
      value.find('\r') != std::string::npos) {
    throw std::invalid_argument(
        "fixture fields must not contain tabs or newlines");
  }
  if (is_author && value.find('|') != std::string::npos) {
    throw std::invalid_argument("fixture author names must not contain '|'");
  }
}

}  // namespace

void write_fixture(std::span<const PaperRecord> records, std::ostream& out) {
  for (const PaperRecord& record : records) {
    check_fixture_field(record.dblp_key, false);
    check_fixture_field(record.title, false);
    out << record.dblp_key << '\t';
    if (record.year) out << *record.year;
    out << '\t' << record.title << '\t';
    for (std::size_t i = 0; i < record.authors.size(); ++i) {
      check_fixture_field(record.authors[i], true);
      if (i > 0) out << '|';
      out << record.authors[i];
    }
    out << '\n';
  }
}

std::string write_fixture(std::span<const PaperRecord> records) {
  std::ostringstream out;
  write_fixture(records, out);
  return out.str();
}

std::vector<PaperRecord> read_all(RecordReader& reader) {
  std::vector<PaperRecord> records;
  while (auto record = reader.next()) {
    records.push_back(std::move(*record));
  }
  return records;
}

}  // namespace coref
