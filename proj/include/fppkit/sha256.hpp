#pragma once

#include <string>
#include <string_view>

namespace fppkit {

// Hex digest of a byte string.
std::string sha256_hex(std::string_view data);

// Hex digest of a file's bytes; throws std::runtime_error on I/O failure.
std::string sha256_file(const std::string& path);

} // namespace fppkit
