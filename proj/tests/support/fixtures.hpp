#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#ifndef PCALC_DATA_DIR
#error "PCALC_DATA_DIR must point at the data/ corpus"
#endif

namespace pcalc::fixtures {

inline std::string data_path(const std::string& name) { return std::string(PCALC_DATA_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data(const std::string& name) { return read_file(data_path(name)); }

inline constexpr const char* kElephantRule = "(forall (z) (if (inst z elephant) (color z gray)))";

}  // namespace pcalc::fixtures
