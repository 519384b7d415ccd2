#include <algorithm>
#include <array>
#include <optional>
#include <string_view>

#include "coref/names.hpp"

namespace coref {

namespace {

struct Entity {
  std::string_view name;
  std::string_view utf8;
};

// The named character references the DBLP DTD declares: the XML built-ins
// plus the Latin-1 letter range and the handful of symbols (reg, micro,
// times, divide) the dump uses. Sorted by name for binary search.
constexpr std::array<Entity, 71> kEntities{{
    {"AElig", "Æ"},   {"Aacute", "Á"},  {"Acirc", "Â"},
    {"Agrave", "À"},  {"Aring", "Å"},   {"Atilde", "Ã"},
    {"Auml", "Ä"},    {"Ccedil", "Ç"},  {"ETH", "Ð"},
    {"Eacute", "É"},  {"Ecirc", "Ê"},   {"Egrave", "È"},
    {"Euml", "Ë"},    {"Iacute", "Í"},  {"Icirc", "Î"},
    {"Igrave", "Ì"},  {"Iuml", "Ï"},    {"Ntilde", "Ñ"},
    {"Oacute", "Ó"},  {"Ocirc", "Ô"},   {"Ograve", "Ò"},
    {"Oslash", "Ø"},  {"Otilde", "Õ"},  {"Ouml", "Ö"},
    {"THORN", "Þ"},   {"Uacute", "Ú"},  {"Ucirc", "Û"},
    {"Ugrave", "Ù"},  {"Uuml", "Ü"},    {"Yacute", "Ý"},
    {"aacute", "á"},  {"acirc", "â"},   {"aelig", "æ"},
    {"agrave", "à"},  {"amp", "&"},          {"apos", "'"},
    {"aring", "å"},   {"atilde", "ã"},  {"auml", "ä"},
    {"ccedil", "ç"},  {"divide", "÷"},  {"eacute", "é"},
    {"ecirc", "ê"},   {"egrave", "è"},  {"eth", "ð"},
    {"euml", "ë"},    {"gt", ">"},           {"iacute", "í"},
    {"icirc", "î"},   {"igrave", "ì"},  {"iuml", "ï"},
    {"lt", "<"},           {"micro", "µ"},   {"ntilde", "ñ"},
    {"oacute", "ó"},  {"ocirc", "ô"},   {"ograve", "ò"},
    {"oslash", "ø"},  {"otilde", "õ"},  {"ouml", "ö"},
    {"quot", "\""},        {"reg", "®"},     {"szlig", "ß"},
    {"thorn", "þ"},   {"times", "×"},   {"uacute", "ú"},
    {"ucirc", "û"},   {"ugrave", "ù"},  {"uuml", "ü"},
    {"yacute", "ý"},  {"yuml", "ÿ"},
}};

static_assert(kEntities.back().name == "yuml");

}  // namespace

std::optional<std::string_view> lookup_entity(std::string_view name) {
  auto it = std::lower_bound(
      kEntities.begin(), kEntities.end(), name,
      [](const Entity& e, std::string_view n) { return e.name < n; });
  if (it == kEntities.end() || it->name != name) return std::nullopt;
  return it->utf8;
}

}  // namespace coref
