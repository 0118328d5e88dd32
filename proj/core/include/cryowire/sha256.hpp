#pragma once

#include <string>

namespace cryowire {

/// SHA-256 of a byte string, returned as lowercase hex. Used to fingerprint
/// canonicalized scenario configs in report headers.
std::string sha256_hex(const std::string& bytes);

}  // namespace cryowire
