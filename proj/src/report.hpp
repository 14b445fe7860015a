#pragma once

#include <string>

#include <json.hpp>

namespace ncagm {

/// Canonical serialization used for report files and determinism checks:
/// two-space indent, sorted object keys (nlohmann's default), shortest
/// round-trip floats, trailing newline.
std::string canonical_dump(const nlohmann::json& j);

/// Writes via a temporary file in the same directory followed by rename, so
/// readers never observe a partial report.
void atomic_write_file(const std::string& path, const std::string& bytes);

}  // namespace ncagm
