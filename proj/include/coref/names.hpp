#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace coref {

// A person name after normalization: entity references decoded, whitespace
// collapsed, and a trailing 4-digit homonym identifier split off when
// present ("Chen Li 0001" -> canonical "Chen Li", suffix "0001").
struct NormalizedName {
  std::string canonical;
  std::optional<std::string> suffix;

  // Unique interning key: canonical plus the suffix token when present.
  std::string full_key() const;

  bool operator==(const NormalizedName&) const = default;
};

// Normalizes a raw author-name string. The suffix splits only when the final
// whitespace-separated token is exactly four decimal digits; "Li 001" and
// "Li 00001" keep their digits in the canonical form.
// Throws std::invalid_argument when the name is empty after normalization.
NormalizedName normalize_name(std::string_view raw);

// Returns true iff `token` is exactly four decimal digits.
bool is_homonym_suffix(std::string_view token);

// Decodes character entity references leniently: known named references and
// well-formed numeric references become their characters, everything else
// (stray '&', unknown names) is preserved verbatim. Used on already-extracted
// name strings; the XML layer decodes strictly on its own.
std::string decode_entities_lenient(std::string_view text);

// Looks up a named character reference (without '&' and ';') from the DBLP
// DTD entity table plus the five XML built-ins. Returns the UTF-8 expansion
// or nullopt for unknown names.
std::optional<std::string_view> lookup_entity(std::string_view name);

// Appends the UTF-8 encoding of `codepoint` to `out`. Returns false for
// values outside the Unicode scalar range (surrogates, > U+10FFFF).
bool append_utf8(std::string& out, std::uint32_t codepoint);

}  // namespace coref
