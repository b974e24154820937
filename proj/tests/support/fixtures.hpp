#pragma once

#include "desiree/parser.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fx {

inline std::string text(const std::string& name) {
  std::ifstream in(std::string(DESIREE_FIXTURES) + "/" + name, std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline desiree::Model load(const std::string& name) {
  auto r = desiree::parse_model(text(name));
  if (!r.ok()) throw std::runtime_error(name + ": " + desiree::format_diagnostic(r.diagnostics.front()));
  return *r.model;
}

inline desiree::Model parse(const std::string& body) {
  auto r = desiree::parse_model("model t {\n" + body + "\n}\n");
  if (!r.ok()) throw std::runtime_error(desiree::format_diagnostic(r.diagnostics.front()));
  return *r.model;
}

inline std::string path(const std::string& name) { return std::string(DESIREE_FIXTURES) + "/" + name; }

}  // namespace fx
