#include "report.hpp"

#include <cstdio>
#include <fstream>

#include "errors.hpp"

namespace ncagm {

std::string canonical_dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void atomic_write_file(const std::string& path, const std::string& bytes) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io_error, "cannot open " + tmp + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::io_error, "short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error(ErrorCode::io_error, "cannot rename " + tmp + " to " + path);
  }
}

}  // namespace ncagm
