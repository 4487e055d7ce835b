#pragma once

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "income_kinetics/error.hpp"

namespace testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 rng(20240917);
    path_ = std::filesystem::temp_directory_path() / ("ikin_test_" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path file(const std::string& name, const std::string& content) const {
    const auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p;
  }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace testing

// Checks that `expr` throws ikin::Error of the given kind whose message contains `fragment`.
#define CHECK_ERROR(expr, error_kind, fragment)                                   \
  do {                                                                            \
    try {                                                                         \
      (void)(expr);                                                               \
      FAIL_CHECK("expected an error from " #expr);                                \
    } catch (const ikin::Error& e) {                                              \
      CHECK(e.kind() == (error_kind));                                            \
      CHECK_MESSAGE(std::string(e.what()).find(fragment) != std::string::npos,    \
                    "message: " << e.what());                                     \
    }                                                                             \
  } while (0)
