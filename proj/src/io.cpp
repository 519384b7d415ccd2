#include "coref/io.hpp"

#include <zlib.h>

#include <cstdio>
#include <cstring>
#include <stdexcept>
#include <vector>

namespace coref {

namespace {

class FileReader final : public ByteReader {
 public:
  explicit FileReader(const std::filesystem::path& path)
      : file_(std::fopen(path.string().c_str(), "rb")) {
    if (!file_) {
      throw std::runtime_error("cannot open " + path.string());
    }
  }
  ~FileReader() override {
    if (file_) std::fclose(file_);
  }

  std::size_t read(char* dst, std::size_t capacity) override {
    std::size_t n = std::fread(dst, 1, capacity, file_);
    if (n == 0 && std::ferror(file_)) {
      throw std::runtime_error("read error");
    }
    return n;
  }

 private:
  std::FILE* file_;
};

class MemoryReader final : public ByteReader {
 public:
  explicit MemoryReader(std::string bytes) : bytes_(std::move(bytes)) {}

  std::size_t read(char* dst, std::size_t capacity) override {
    std::size_t n = std::min(capacity, bytes_.size() - pos_);
    std::memcpy(dst, bytes_.data() + pos_, n);
    pos_ += n;
    return n;
  }

 private:
  std::string bytes_;
  std::size_t pos_ = 0;
};

class GzipReader final : public ByteReader {
 public:
  explicit GzipReader(std::unique_ptr<ByteReader> raw)
      : raw_(std::move(raw)), compressed_(1 << 16) {
    std::memset(&strm_, 0, sizeof(strm_));
    // 15 window bits + 32: accept gzip or zlib wrapping.
    if (inflateInit2(&strm_, 15 + 32) != Z_OK) {
      throw std::runtime_error("inflateInit2 failed");
    }
  }
  ~GzipReader() override { inflateEnd(&strm_); }

  std::size_t read(char* dst, std::size_t capacity) override {
    if (finished_ || capacity == 0) return 0;
    strm_.next_out = reinterpret_cast<Bytef*>(dst);
    strm_.avail_out = static_cast<uInt>(capacity);
    while (strm_.avail_out > 0) {
      if (strm_.avail_in == 0) {
        std::size_t n = raw_->read(compressed_.data(), compressed_.size());
        if (n == 0) {
          if (strm_.avail_out == capacity) {
            throw std::runtime_error("truncated gzip stream");
          }
          break;
        }
        strm_.next_in = reinterpret_cast<Bytef*>(compressed_.data());
        strm_.avail_in = static_cast<uInt>(n);
      }
      int rc = inflate(&strm_, Z_NO_FLUSH);
      if (rc == Z_STREAM_END) {
        finished_ = true;
        break;
      }
      if (rc != Z_OK) {
        throw std::runtime_error(std::string("gzip decode error: ") +
                                 (strm_.msg ? strm_.msg : zError(rc)));
      }
    }
    return capacity - strm_.avail_out;
  }

 private:
  std::unique_ptr<ByteReader> raw_;
  std::vector<char> compressed_;
  z_stream strm_;
  bool finished_ = false;
};

// Replays a sniffed prefix before the remaining stream.
class PrefixReader final : public ByteReader {
 public:
  PrefixReader(std::string prefix, std::unique_ptr<ByteReader> rest)
      : prefix_(std::move(prefix)), rest_(std::move(rest)) {}

  std::size_t read(char* dst, std::size_t capacity) override {
    if (pos_ < prefix_.size()) {
      std::size_t n = std::min(capacity, prefix_.size() - pos_);
      std::memcpy(dst, prefix_.data() + pos_, n);
      pos_ += n;
      return n;
    }
    return rest_->read(dst, capacity);
  }

 private:
  std::string prefix_;
  std::size_t pos_ = 0;
  std::unique_ptr<ByteReader> rest_;
};

}  // namespace

std::unique_ptr<ByteReader> make_file_reader(
    const std::filesystem::path& path) {
  return std::make_unique<FileReader>(path);
}

std::unique_ptr<ByteReader> make_memory_reader(std::string bytes) {
  return std::make_unique<MemoryReader>(std::move(bytes));
}

std::unique_ptr<ByteReader> make_gzip_reader(std::unique_ptr<ByteReader> raw) {
  return std::make_unique<GzipReader>(std::move(raw));
}

std::unique_ptr<ByteReader> open_input(const std::filesystem::path& path) {
  auto file = make_file_reader(path);
  char magic[2];
  std::size_t got = 0;
  while (got < 2) {
    std::size_t n = file->read(magic + got, 2 - got);
    if (n == 0) break;
    got += n;
  }
  auto replay = std::make_unique<PrefixReader>(std::string(magic, got),
                                               std::move(file));
  if (got == 2 && static_cast<unsigned char>(magic[0]) == 0x1F &&
      static_cast<unsigned char>(magic[1]) == 0x8B) {
    return make_gzip_reader(std::move(replay));
  }
  return replay;
}

std::string gzip_compress(std::string_view bytes) {
  z_stream strm;
  std::memset(&strm, 0, sizeof(strm));
  // 15 window bits + 16: write a gzip header.
  if (deflateInit2(&strm, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 15 + 16, 8,
                   Z_DEFAULT_STRATEGY) != Z_OK) {
    throw std::runtime_error("deflateInit2 failed");
  }
  std::string out;
  std::vector<char> buffer(1 << 16);
  strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(bytes.data()));
  strm.avail_in = static_cast<uInt>(bytes.size());
  int rc;
  do {
    strm.next_out = reinterpret_cast<Bytef*>(buffer.data());
    strm.avail_out = static_cast<uInt>(buffer.size());
    rc = deflate(&strm, Z_FINISH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      deflateEnd(&strm);
      throw std::runtime_error("deflate failed");
    }
    out.append(buffer.data(), buffer.size() - strm.avail_out);
  } while (rc != Z_STREAM_END);
  deflateEnd(&strm);
  return out;
}

}  // namespace coref
