#include "coref/names.hpp"

#include <cctype>
#include <stdexcept>

namespace coref {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Parses one reference starting at text[pos] == '&'. On success appends the
// expansion and returns the index past ';'. Returns pos unchanged when the
// reference is not well formed or the name is unknown (lenient mode keeps
// the original bytes).
std::size_t try_decode_reference(std::string_view text, std::size_t pos,
                                 std::string& out) {
  std::size_t end = text.find(';', pos + 1);
  if (end == std::string_view::npos || end == pos + 1 || end - pos > 32) {
    return pos;
  }
  std::string_view body = text.substr(pos + 1, end - pos - 1);
  if (body[0] == '#') {
    std::uint32_t code = 0;
    std::size_t i = 1;
    bool hex = i < body.size() && (body[i] == 'x' || body[i] == 'X');
    if (hex) ++i;
    if (i >= body.size()) return pos;
    for (; i < body.size(); ++i) {
      char c = body[i];
      std::uint32_t digit;
      if (is_digit(c)) {
        digit = static_cast<std::uint32_t>(c - '0');
      } else if (hex && c >= 'a' && c <= 'f') {
        digit = static_cast<std::uint32_t>(c - 'a' + 10);
      } else if (hex && c >= 'A' && c <= 'F') {
        digit = static_cast<std::uint32_t>(c - 'A' + 10);
      } else {
        return pos;
      }
      code = code * (hex ? 16 : 10) + digit;
      if (code > 0x10FFFF) return pos;
    }
    std::string tmp;
    if (!append_utf8(tmp, code)) return pos;
    out += tmp;
    return end + 1;
  }
  auto expansion = lookup_entity(body);
  if (!expansion) return pos;
  out += *expansion;
  return end + 1;
}

}  // namespace

bool append_utf8(std::string& out, std::uint32_t cp) {
  if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
  return true;
}

std::string decode_entities_lenient(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t amp = text.find('&', pos);
    if (amp == std::string_view::npos) {
      out.append(text.substr(pos));
      break;
    }
    out.append(text.substr(pos, amp - pos));
    std::size_t after = try_decode_reference(text, amp, out);
    if (after == amp) {
      out += '&';
      pos = amp + 1;
    } else {
      pos = after;
    }
  }
  return out;
}

bool is_homonym_suffix(std::string_view token) {
  if (token.size() != 4) return false;
  for (char c : token) {
    if (!is_digit(c)) return false;
  }
  return true;
}

NormalizedName normalize_name(std::string_view raw) {
  std::string decoded = decode_entities_lenient(raw);

  std::string collapsed;
  collapsed.reserve(decoded.size());
  bool pending_space = false;
  for (char c : decoded) {
    if (is_space(c)) {
      pending_space = !collapsed.empty();
      continue;
    }
    if (pending_space) {
      collapsed += ' ';
      pending_space = false;
    }
    collapsed += c;
  }
  if (collapsed.empty()) {
    throw std::invalid_argument("author name empty after normalization");
  }

  NormalizedName name;
  std::size_t last_space = collapsed.rfind(' ');
  if (last_space != std::string::npos &&
      is_homonym_suffix(std::string_view(collapsed).substr(last_space + 1))) {
    name.suffix = collapsed.substr(last_space + 1);
    collapsed.resize(last_space);
  }
  name.canonical = std::move(collapsed);
  return name;
}

std::string NormalizedName::full_key() const {
  if (!suffix) return canonical;
  std::string key = canonical;
  key += ' ';
  key += *suffix;
  return key;
}

}  // namespace coref
