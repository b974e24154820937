#pragma once
// Textual model format: parsing and canonical printing.

#include "desiree/model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace desiree {

struct ParseDiagnostic {
  SourceSpan span;
  std::string message;
  std::string code;  // "syntax", "duplicate-id", "dangling-reference", ...
};

struct ParseResult {
  std::optional<Model> model;
  std::vector<ParseDiagnostic> diagnostics;
  bool ok() const { return model.has_value(); }
};

// Parses and validates. On failure `model` is empty and at least one diagnostic is set.
ParseResult parse_model(std::string_view text);

// A single description, e.g. a query pattern. Throws Error(Parse) on bad input.
Description parse_description(std::string_view text);

std::string print_model(const Model& m);
std::string print_description(const Description& d);
std::string print_region(const RegionExpr& r);
std::string print_element(const Element& e);     // "qc QC_1 := ...;"
std::string print_body(const Element& e);        // body only
std::string print_application(const OperatorApplication& a);

std::string format_diagnostic(const ParseDiagnostic& d, std::string_view file = {});

}  // namespace desiree
