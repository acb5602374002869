#include "pubindex/input.hpp"

#include <zlib.h>

#include <array>
#include <fstream>
#include <iostream>
#include <streambuf>
#include <vector>

namespace pubindex {

namespace {

class GzipStreambuf : public std::streambuf {
 public:
  explicit GzipStreambuf(std::istream& source) : source_(source) {
    if (inflateInit2(&zs_, 16 + MAX_WBITS) != Z_OK) throw InputError("zlib initialization failed");
  }
  ~GzipStreambuf() override { inflateEnd(&zs_); }

  GzipStreambuf(const GzipStreambuf&) = delete;
  GzipStreambuf& operator=(const GzipStreambuf&) = delete;

 protected:
  int_type underflow() override {
    if (gptr() < egptr()) return traits_type::to_int_type(*gptr());
    while (!done_) {
      if (zs_.avail_in == 0) {
        source_.read(in_.data(), static_cast<std::streamsize>(in_.size()));
        const auto got = source_.gcount();
        if (got <= 0) {
          if (!stream_end_) throw InputError("truncated gzip stream");
          done_ = true;
          break;
        }
        zs_.next_in = reinterpret_cast<Bytef*>(in_.data());
        zs_.avail_in = static_cast<uInt>(got);
      }
      if (stream_end_) {
        // concatenated gzip members
        inflateReset(&zs_);
        stream_end_ = false;
      }
      zs_.next_out = reinterpret_cast<Bytef*>(out_.data());
      zs_.avail_out = static_cast<uInt>(out_.size());
      const int rc = inflate(&zs_, Z_NO_FLUSH);
      if (rc == Z_STREAM_END) {
        stream_end_ = true;
      } else if (rc != Z_OK && rc != Z_BUF_ERROR) {
        throw InputError(std::string("gzip decode error: ") + (zs_.msg ? zs_.msg : "unknown"));
      }
      const std::size_t produced = out_.size() - zs_.avail_out;
      if (produced > 0) {
        setg(out_.data(), out_.data(), out_.data() + produced);
        return traits_type::to_int_type(*gptr());
      }
    }
    return traits_type::eof();
  }

 private:
  std::istream& source_;
  z_stream zs_{};
  std::array<char, 32 * 1024> in_{};
  std::array<char, 64 * 1024> out_{};
  bool stream_end_ = false;
  bool done_ = false;
};

class GzipIstream : public std::istream {
 public:
  explicit GzipIstream(std::istream& source) : std::istream(nullptr), buf_(source) { rdbuf(&buf_); }

 private:
  GzipStreambuf buf_;
};

class OwningGzipIstream : public std::istream {
 public:
  explicit OwningGzipIstream(std::unique_ptr<std::istream> file)
      : std::istream(nullptr), file_(std::move(file)), buf_(*file_) {
    rdbuf(&buf_);
  }

 private:
  std::unique_ptr<std::istream> file_;
  GzipStreambuf buf_;
};

class BorrowedIstream : public std::istream {
 public:
  explicit BorrowedIstream(std::istream& source) : std::istream(source.rdbuf()) {}
};

bool is_gzip(std::istream& in) {
  const int b0 = in.peek();
  if (b0 != 0x1F) return false;
  in.get();
  const int b1 = in.peek();
  in.unget();
  return b1 == 0x8B;
}

}  // namespace

std::unique_ptr<std::istream> wrap_input(std::istream& source) {
  if (is_gzip(source)) return std::make_unique<GzipIstream>(source);
  source.clear();
  return std::make_unique<BorrowedIstream>(source);
}

std::unique_ptr<std::istream> open_input(const std::string& path) {
  if (path == "-") return wrap_input(std::cin);
  auto file = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!*file) throw InputError("cannot open '" + path + "'");
  if (is_gzip(*file)) return std::make_unique<OwningGzipIstream>(std::move(file));
  file->clear();
  return file;
}

}  // namespace pubindex
