#pragma once

#include <string>

#include "cogorder/io.hpp"

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(COGORDER_DATA_DIR) + "/" + name; }

inline const cogorder::io::WorkflowDocument& checkin() {
  static const auto doc = cogorder::io::load_workflow(path("checkin-full.json"));
  return doc;
}

inline const cogorder::io::WorkflowDocument& validation() {
  static const auto doc = cogorder::io::load_workflow(path("checkin-validation.json"));
  return doc;
}

inline cogorder::Workflow checkin_with(const std::string& member) {
  return cogorder::instantiate_variant(checkin().workflow, "AUTH", member);
}

}  // namespace fixtures
