#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace ordertop {

/// Result of checking one claim on a finite instance.
///
/// JSON objects keep their keys sorted, so identical inputs give identical
/// bytes from `dump()`.
struct Certificate {
  std::string claim;
  nlohmann::json parameters = nlohmann::json::object();
  bool pass = false;
  nlohmann::json evidence = nlohmann::json::object();

  nlohmann::json to_json() const {
    return {{"claim", claim},
            {"parameters", parameters},
            {"status", pass ? "pass" : "fail"},
            {"evidence", evidence}};
  }
};

}  // namespace ordertop
