#include "desiree/error.hpp"
#include "desiree/export.hpp"
#include "desiree/lint.hpp"
#include "desiree/membership.hpp"
#include "desiree/parser.hpp"
#include "desiree/reasoner.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace desiree;

namespace {

Model load(const std::string& text) {
  auto r = parse_model(text);
  if (!r.ok()) {
    const auto& d = r.diagnostics.front();
    throw py::value_error(format_diagnostic(d));
  }
  return std::move(*r.model);
}

Rational number(const std::string& s) {
  auto r = parse_rational(s);
  if (!r) throw py::value_error("not a number: " + s);
  return *r;
}

}  // namespace

PYBIND11_MODULE(_desiree, m) {
  m.doc() = "Requirements models: parsing, reasoning, membership and linting";

  py::register_exception<Error>(m, "DesireeError", PyExc_RuntimeError);

  m.def("format_model", [](const std::string& text) { return print_model(load(text)); });

  m.def("parse_diagnostics", [](const std::string& text) {
    std::vector<py::dict> out;
    for (const auto& d : parse_model(text).diagnostics) {
      py::dict x;
      x["line"] = d.span.line;
      x["column"] = d.span.column;
      x["end_line"] = d.span.end_line;
      x["end_column"] = d.span.end_column;
      x["code"] = d.code;
      x["message"] = d.message;
      out.push_back(x);
    }
    return out;
  });

  m.def("element_ids", [](const std::string& text) {
    std::vector<std::string> ids;
    for (const auto& e : load(text).elements) ids.push_back(e.id);
    return ids;
  });

  // Degrees as exact "n/d" or decimal strings, keyed by region name.
  m.def(
      "membership",
      [](const std::string& text, const std::string& quality, const std::string& value) {
        Model md = load(text);
        const QualitySpace* qs = md.space(quality);
        if (!qs) throw py::key_error(quality);
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& [r, d] : membership(number(value), *qs)) out.emplace_back(r, to_string(d));
        return out;
      },
      py::arg("model"), py::arg("quality"), py::arg("value"));

  m.def("interval_pair", [](const std::string& p, const std::string& a, const std::string& b, const std::string& c,
                            const std::string& d) {
    auto [x, y] = membership_interval_pair(number(p), number(a), number(b), number(c), number(d));
    return std::make_pair(to_string(x), to_string(y));
  });

  m.def(
      "subsumes",
      [](const std::string& sub, const std::string& sup, const std::string& model_text) {
        std::vector<DLAxiom> axioms;
        if (!model_text.empty()) axioms = model_axioms(load(model_text));
        auto v = subsumes(translate_description(parse_description(sub)), translate_description(parse_description(sup)),
                          axioms);
        return std::string(to_string(v.kind));
      },
      py::arg("sub"), py::arg("sup"), py::arg("model") = "");

  m.def("query", [](const std::string& text, const std::string& pattern) {
    return query(load(text), parse_description(pattern));
  });

  m.def(
      "fulfill",
      [](const std::string& text, std::optional<unsigned> threshold) {
        std::map<std::string, std::string> out;
        for (const auto& [id, s] : propagate_fulfillment(load(text), threshold).state) out[id] = report_name(s);
        return out;
      },
      py::arg("model"), py::arg("threshold") = py::none());

  m.def("consistency", [](const std::string& text) {
    auto r = check_consistency(load(text));
    std::vector<std::string> msgs;
    for (const auto& e : r.explanations) msgs.push_back(e.message);
    return std::make_pair(std::string(to_string(r.status)), msgs);
  });

  m.def("lint", [](const std::string& text) { return emit_findings(lint_model(load(text))); });

  m.def("to_owl", [](const std::string& text) { return emit_owl(load(text)); });
}
