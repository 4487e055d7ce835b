#pragma once

// Run manifests. The hash covers the tool version, the command arguments and
// the bytes of every input file, so identical inputs give identical hashes.

#include <filesystem>
#include <string>
#include <vector>

namespace ikin::manifest {

const char* version() noexcept;

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view data);

struct Manifest {
  std::string command;
  std::vector<std::string> arguments;             // normalized "key=value" pairs
  std::vector<std::filesystem::path> inputs;      // hashed by content
  std::vector<std::string> outputs;               // file names relative to the output directory

  std::string hash() const;
  /// "income-kinetics <version> manifest=<hash>", used as a header comment in outputs.
  std::string header_line() const;
  std::string render() const;
};

}  // namespace ikin::manifest
