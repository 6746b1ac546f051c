#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "branchcover/cover.hpp"
#include "branchcover/mcglift.hpp"

namespace fixtures {

inline std::string path(const std::string& rel) { return std::string(BCOV_DATA_DIR) + "/" + rel; }

inline std::string read(const std::string& rel) {
  std::ifstream in(path(rel), std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline bcov::CoverSpec cover(const std::string& name) {
  return bcov::parse_cover(read("covers/" + name + ".cover"));
}

inline bcov::Automorphism automorphism(const std::string& name) {
  return bcov::parse_automorphism(read("autos/" + name + ".aut"));
}

}  // namespace fixtures
