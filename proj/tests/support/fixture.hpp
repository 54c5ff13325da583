#pragma once

#include <string>

#include "nlq/query_service.hpp"

namespace nlq::testing {

inline std::string fixture_path(const std::string& file) {
  return std::string(NLQ_FIXTURE_DIR) + "/" + file;
}

inline AppConfig fixture_config() {
  AppConfig cfg;
  cfg.schema_path = fixture_path("schema.json");
  return cfg;
}

/// Loaded once per test binary; the engine is immutable.
inline const Engine& fixture_engine() {
  static const Engine engine = Engine::load(fixture_config());
  return engine;
}

}  // namespace nlq::testing
