#pragma once

#include <string>
#include <vector>

#include <bratteli/io.hpp>

namespace bratteli::cli {

// Provenance block embedded in every report. The timestamp is the only field that
// differs between identical invocations.
class Manifest {
 public:
  explicit Manifest(std::string command) : command_(std::move(command)) {}

  void input(const std::string& path);  // records the file's sha256
  void param(const std::string& key, Json value) { params_[key] = std::move(value); }
  void seed(std::uint64_t s) { seed_ = s; has_seed_ = true; }

  Json to_json() const;

 private:
  std::string command_;
  Json inputs_ = Json::array();
  Json params_ = Json::object();
  std::uint64_t seed_ = 0;
  bool has_seed_ = false;
};

std::string sha256_file(const std::string& path);

}  // namespace bratteli::cli
