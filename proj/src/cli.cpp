#include "desiree/cli.hpp"

#include "desiree/error.hpp"
#include "desiree/export.hpp"
#include "desiree/lint.hpp"
#include "desiree/membership.hpp"
#include "desiree/parser.hpp"
#include "desiree/reasoner.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace desiree {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Model load(const std::string& path, std::ostream& err) {
  auto r = parse_model(slurp(path));
  if (!r.ok()) {
    for (const auto& d : r.diagnostics) err << format_diagnostic(d, path) << "\n";
    throw UsageError("");
  }
  return std::move(*r.model);
}

int cmd_fmt(const Model& m, bool as_json, std::ostream& out) {
  if (as_json) {
    out << nlohmann::ordered_json{{"version", 1}, {"model", print_model(m)}}.dump(2) << "\n";
  } else {
    out << print_model(m);
  }
  return 0;
}

int cmd_check(const Model& m, unsigned bound, bool as_json, std::ostream& out) {
  auto validation = validate_model(m);
  SearchOptions opt;
  opt.bound = bound;
  auto tags = check_strength_tags(m, opt);
  auto cons = check_consistency(m, bound);
  bool dirty = !validation.empty() || !tags.diagnostics.empty() || cons.status == ConsistencyStatus::Inconsistent;
  if (as_json) {
    out << emit_check_report(validation, m, tags, cons);
    return dirty ? 1 : 0;
  }
  for (const auto& d : validation)
    out << (d.severity == Severity::Error ? "error" : "warning") << " [" << d.code << "] "
        << (d.element.empty() ? "" : d.element + ": ") << d.message << "\n";
  for (const auto& d : tags.diagnostics)
    out << "strength [" << to_string(m.applications[d.application].op) << " on " << d.input << ", declared "
        << to_string(d.declared) << "] " << d.message << "\n";
  out << "consistency: " << to_string(cons.status) << "\n";
  for (const auto& e : cons.explanations) {
    out << "  " << e.message;
    if (!e.individual.empty()) out << " (individual " << e.individual << ")";
    out << "\n";
    for (const auto& a : e.axioms) out << "    - " << a << "\n";
  }
  if (!dirty) out << "ok\n";
  return dirty ? 1 : 0;
}

int cmd_lint(const Model& m, const std::string& config, bool as_json, std::ostream& out) {
  LintConfig cfg = config.empty() ? LintConfig{} : parse_lint_config(slurp(config));
  auto findings = lint_model(m, cfg);
  if (as_json) {
    out << emit_findings(findings);
  } else {
    for (const auto& f : findings) {
      if (f.span) out << f.span->line << ":" << f.span->column << ": ";
      out << (f.element.empty() ? "<model>" : f.element) << ": " << to_string(f.issue) << ": " << f.detail;
      if (f.suggestion) out << " (try " << to_string(*f.suggestion) << ")";
      out << "\n";
    }
  }
  return findings.empty() ? 0 : 1;
}

int cmd_query(const Model& m, const std::string& pattern, bool as_json, std::ostream& out) {
  auto matches = query(m, parse_description(pattern));
  if (as_json) {
    out << emit_query_report(pattern, matches);
  } else {
    for (const auto& id : matches) out << id << "\n";
  }
  return 0;
}

int cmd_fulfill(const Model& m, std::optional<unsigned> threshold, bool as_json, std::ostream& out) {
  auto r = propagate_fulfillment(m, threshold);
  if (as_json) {
    out << emit_report({}, r, {}) << "\n";
  } else {
    for (const auto& e : m.elements)
      if (auto it = r.state.find(e.id); it != r.state.end()) out << e.id << ": " << to_string(it->second) << "\n";
    for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  }
  return r.warnings.empty() ? 0 : 1;
}

int cmd_translate(const Model& m, const std::string& path, std::ostream& out) {
  std::string owl = emit_owl(m);
  if (path.empty() || path == "-") {
    out << owl;
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << owl)) throw UsageError("cannot write " + path);
  return 0;
}

int cmd_membership(const Model& m, const std::string& quality, const std::string& value, const std::string& region,
                   bool as_json, std::ostream& out) {
  auto v = parse_rational(value);
  if (!v) throw UsageError("--value: not a number: " + value);
  const QualitySpace* qs = m.space(quality);
  if (!qs) throw Error(ErrorCode::UnknownRegion, "no quality space for " + quality);
  auto degrees = membership(*v, *qs);
  if (!region.empty()) {
    auto it = std::find_if(degrees.begin(), degrees.end(), [&](const auto& d) { return d.first == region; });
    if (it == degrees.end()) throw Error(ErrorCode::UnknownRegion, "region " + region + " is not defined for " + quality);
    degrees = {*it};
  }
  if (as_json) {
    out << emit_membership_report(quality, *v, degrees);
  } else if (!region.empty()) {
    out << to_string(degrees[0].second) << "\n";
  } else {
    for (const auto& [r, d] : degrees) out << r << ": " << to_string(d) << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Requirements models: format, check, lint, query, fulfillment, export, membership"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  std::string file, config, pattern, owl_out, quality, value, region;
  unsigned bound = default_bound();
  std::optional<unsigned> threshold;

  auto add_file = [&](CLI::App* s) { s->add_option("FILE", file, "model file")->required(); };
  auto* fmt = app.add_subcommand("fmt", "print the model in canonical form");
  add_file(fmt);
  auto* check = app.add_subcommand("check", "validate, check strength tags and consistency");
  add_file(check);
  check->add_option("--bound", bound, "counter-model size bound")->check(CLI::Range(1u, 16u));
  auto* lint = app.add_subcommand("lint", "report requirements issues");
  add_file(lint);
  lint->add_option("--config", config, "lexicon file");
  auto* q = app.add_subcommand("query", "elements matching a description");
  add_file(q);
  q->add_option("--pattern", pattern, "description pattern")->required();
  auto* ful = app.add_subcommand("fulfill", "propagate fulfillment from marks");
  add_file(ful);
  ful->add_option("--threshold", threshold, "outputs needed for one-to-many operators");
  auto* tr = app.add_subcommand("translate", "export to OWL2 functional syntax");
  add_file(tr);
  tr->add_option("--out", owl_out, "output file; stdout if omitted");
  auto* mem = app.add_subcommand("membership", "graded membership of a value");
  add_file(mem);
  mem->add_option("--quality", quality, "quality name")->required();
  mem->add_option("--value", value, "observed value")->required();
  mem->add_option("--region", region, "print only this region");
  for (auto* s : {fmt, check, lint, q, ful, tr, mem}) s->add_flag("--json", as_json, "machine-readable output");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Model m = load(file, err);
    if (*fmt) return cmd_fmt(m, as_json, out);
    if (*check) return cmd_check(m, bound, as_json, out);
    if (*lint) return cmd_lint(m, config, as_json, out);
    if (*q) return cmd_query(m, pattern, as_json, out);
    if (*ful) return cmd_fulfill(m, threshold, as_json, out);
    if (*tr) return cmd_translate(m, owl_out, out);
    if (*mem) return cmd_membership(m, quality, value, region, as_json, out);
  } catch (const UsageError& e) {
    if (*e.what()) err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace desiree
