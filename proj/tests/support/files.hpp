#pragma once

#include <fstream>
#include <sstream>
#include <string>

#ifndef QCF_DATA_DIR
#error "QCF_DATA_DIR must point at the data directory"
#endif

namespace qcf::testing {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_file(const std::string& name) { return read_file(std::string(QCF_DATA_DIR) + "/" + name); }

/// File text with `#` comments removed.
inline std::string strip_comments(const std::string& text) {
  std::istringstream in(text);
  std::string out;
  for (std::string line; std::getline(in, line);) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    out += line + "\n";
  }
  return out;
}

}  // namespace qcf::testing
