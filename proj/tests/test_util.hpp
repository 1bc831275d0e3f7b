#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace testutil {

inline std::string data_dir() { return LLMFP_DATA_DIR; }

inline std::string data_file(const std::string& name) {
  return (std::filesystem::path(data_dir()) / name).string();
}

// Fresh scratch directory under the system temp root.
inline std::string temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "llmfp_tests" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string write_temp(const std::string& dir, const std::string& name,
                              const std::string& content) {
  auto path = (std::filesystem::path(dir) / name).string();
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

}  // namespace testutil
