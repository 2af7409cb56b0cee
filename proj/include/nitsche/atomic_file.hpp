#ifndef NITSCHE_ATOMIC_FILE_HPP
#define NITSCHE_ATOMIC_FILE_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "nitsche/errors.hpp"

namespace nitsche {

/// Writes `contents` to a sibling temporary file, then renames it over `path`.
inline void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw Error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error("cannot rename onto '" + path + "'");
  }
}

}  // namespace nitsche

#endif
