#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace bratteli {

// Domain error: a stable kind string plus structured detail fields.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, nlohmann::json detail = nlohmann::json::object())
      : std::runtime_error(describe(kind, detail)), kind_(std::move(kind)), detail_(std::move(detail)) {}

  const std::string& kind() const { return kind_; }
  const nlohmann::json& detail() const { return detail_; }

  nlohmann::json to_json() const {
    nlohmann::json j = {{"error", kind_}};
    for (auto it = detail_.begin(); it != detail_.end(); ++it) j[it.key()] = it.value();
    return j;
  }

 private:
  static std::string describe(const std::string& kind, const nlohmann::json& detail) {
    return detail.empty() ? kind : kind + " " + detail.dump();
  }

  std::string kind_;
  nlohmann::json detail_;
};

}  // namespace bratteli
