#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "invclust/tracer.hpp"

namespace testsupport {

inline const char* kLeftProgram =
    "int main() {\n"
    "  int n, sum = 0, i;\n"
    "  scanf(\"%d\", &n);\n"
    "  i = 0;\n"
    "  while (i < n) {\n"
    "    i++;\n"
    "    sum = sum + i;\n"
    "  }\n"
    "  printf(\"%d\\n\", sum);\n"
    "}\n";

inline const char* kRightProgram =
    "int main() {\n"
    "  int j, n, s = 0;\n"
    "  scanf(\"%d\", &n);\n"
    "  for (j = n; j >= 0; j--) {\n"
    "    s = j + s;\n"
    "  }\n"
    "  printf(\"%d\\n\", s);\n"
    "}\n";

inline std::vector<invclust::TestCase> sum_suite(std::initializer_list<long> ns) {
  std::vector<invclust::TestCase> suite;
  for (long n : ns) suite.push_back({std::to_string(n) + "\n", std::to_string(n * (n + 1) / 2) + "\n"});
  return suite;
}

inline std::string read_golden(const std::string& name) {
  std::ifstream in(std::filesystem::path(INVCLUST_GOLDEN_DIR) / name, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Fresh directory under the system temp dir, removed on destruction.
struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("invclust_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream(path, std::ios::binary) << text;
}

}  // namespace testsupport
