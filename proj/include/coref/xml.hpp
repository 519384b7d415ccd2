#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "coref/common.hpp"
#include "coref/io.hpp"

namespace coref {

struct XmlAttribute {
  std::string name;
  std::string value;
};

// Minimal streaming pull parser for the element/text subset the DBLP dump
// uses: declaration, DOCTYPE, comments, PIs and CDATA are consumed; start
// tags carry attributes; text is entity-decoded. Memory use is bounded by
// the read buffer plus the current text run. Structural problems raise
// ParseError with the byte offset; an unknown *named* entity decodes to
// U+FFFD and increments a warning counter instead.
class XmlPullParser {
 public:
  enum class Event { start_element, end_element, text, end_document };

  explicit XmlPullParser(std::unique_ptr<ByteReader> input);
  ~XmlPullParser();

  XmlPullParser(const XmlPullParser&) = delete;
  XmlPullParser& operator=(const XmlPullParser&) = delete;

  Event next();

  // Valid after start_element / end_element.
  const std::string& name() const;
  // Valid after start_element.
  const std::vector<XmlAttribute>& attributes() const;
  // Valid after text. Decoded; skipped unless capture is enabled, so callers
  // that only need a few fields do not pay for the rest.
  const std::string& text() const;

  // When disabled, text events are validated but not materialized (text()
  // returns an empty string). Enabled by default.
  void set_capture_text(bool capture);

  std::size_t offset() const;
  std::uint64_t unknown_entity_count() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace coref
