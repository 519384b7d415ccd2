#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace coref {

// Dense 32-bit node indices. DBLP stays well below 2^32 entities and the
// narrower ids halve adjacency memory.
using AuthorId = std::uint32_t;
using PaperId = std::uint32_t;

// Failure while decoding an input stream. `offset` is the byte position in
// the (decompressed) stream where the problem was detected; for line-based
// inputs the message also carries the line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " (byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace coref
