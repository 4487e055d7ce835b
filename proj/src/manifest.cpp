#include "income_kinetics/manifest.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iterator>
#include <memory>

#include "income_kinetics/error.hpp"

#ifndef IKIN_VERSION
#define IKIN_VERSION "0.0.0"
#endif

namespace ikin::manifest {

const char* version() noexcept { return IKIN_VERSION; }

namespace {

struct Digest {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx{EVP_MD_CTX_new(), &EVP_MD_CTX_free};

  Digest() {
    require(ctx && EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) == 1, ErrorKind::internal,
            "SHA-256 initialization failed");
  }
  void update(std::string_view data) {
    require(EVP_DigestUpdate(ctx.get(), data.data(), data.size()) == 1, ErrorKind::internal, "SHA-256 update failed");
  }
  std::string hex() {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    require(EVP_DigestFinal_ex(ctx.get(), md, &len) == 1, ErrorKind::internal, "SHA-256 finalization failed");
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    for (unsigned int k = 0; k < len; ++k) {
      out += digits[md[k] >> 4];
      out += digits[md[k] & 0xF];
    }
    return out;
  }
};

std::string file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::io, "cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Length-prefixed so that field boundaries cannot be shifted between fields.
void feed(Digest& d, std::string_view field) {
  d.update(std::to_string(field.size()));
  d.update(":");
  d.update(field);
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  Digest d;
  d.update(data);
  return d.hex();
}

std::string Manifest::hash() const {
  Digest d;
  feed(d, version());
  feed(d, command);
  for (const auto& a : arguments) feed(d, a);
  for (const auto& p : inputs) feed(d, file_bytes(p));
  return d.hex();
}

std::string Manifest::header_line() const {
  return std::string("income-kinetics ") + version() + " manifest=" + hash();
}

std::string Manifest::render() const {
  std::string out = "tool = income-kinetics\nversion = " + std::string(version()) + "\ncommand = " + command + "\n";
  for (const auto& a : arguments) out += "argument = " + a + "\n";
  for (const auto& p : inputs) out += "input = " + p.filename().string() + " sha256=" + sha256_hex(file_bytes(p)) + "\n";
  for (const auto& o : outputs) out += "output = " + o + "\n";
  out += "manifest = " + hash() + "\n";
  return out;
}

}  // namespace ikin::manifest
