#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>

namespace coref {

// Pull-based byte source feeding the streaming parsers.
class ByteReader {
 public:
  virtual ~ByteReader() = default;
  // Reads up to `capacity` bytes into `dst`; 0 means end of stream.
  virtual std::size_t read(char* dst, std::size_t capacity) = 0;
};

std::unique_ptr<ByteReader> make_file_reader(const std::filesystem::path& path);
std::unique_ptr<ByteReader> make_memory_reader(std::string bytes);

// Wraps a raw source in a streaming gzip inflater.
std::unique_ptr<ByteReader> make_gzip_reader(std::unique_ptr<ByteReader> raw);

// Opens a file, transparently decompressing when the content starts with the
// gzip magic bytes 0x1F 0x8B.
std::unique_ptr<ByteReader> open_input(const std::filesystem::path& path);

// Gzip-compresses `bytes`; test helper for the auto-detection path.
std::string gzip_compress(std::string_view bytes);

}  // namespace coref
