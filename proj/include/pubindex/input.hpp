#pragma once

#include <istream>
#include <memory>
#include <stdexcept>
#include <string>

namespace pubindex {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Opens `path` ("-" for standard input) for reading. Gzip input is detected
/// by its magic bytes (0x1F 0x8B) and decompressed on the fly.
std::unique_ptr<std::istream> open_input(const std::string& path);

/// Wraps an already-open stream the same way open_input does. `source` must
/// outlive the returned stream.
std::unique_ptr<std::istream> wrap_input(std::istream& source);

}  // namespace pubindex
