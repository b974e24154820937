#include "desiree/operators.hpp"

#include "desiree/error.hpp"
#include "desiree/reasoner.hpp"

#include <algorithm>
#include <cctype>

namespace desiree {

namespace {

const Element& input_of(const Model& m, const std::string& id) {
  const Element* e = m.find(id);
  if (!e) throw Error(ErrorCode::UnknownElement, "unknown element '" + id + "'");
  return *e;
}

const QualityStatement& quality_input(const Element& e, const char* op) {
  const QualityStatement* q = e.quality();
  if (!is_quality_kind(e.kind) || !q)
    throw Error(ErrorCode::NotAQuality, std::string(op) + " needs a structured QG or QC, got " + e.id);
  return *q;
}

std::string fresh_id(const Model& m, std::string base) {
  base += "'";
  while (m.find(base)) base += "'";
  return base;
}

void check_kinds(OperatorKind op, const Element& in, const std::vector<Element>& outs) {
  auto allowed = output_kinds(op, in.kind);
  if (allowed.empty())
    throw Error(ErrorCode::Signature, std::string(to_string(op)) + " does not apply to a " + to_string(in.kind));
  for (const auto& o : outs)
    if (std::find(allowed.begin(), allowed.end(), o.kind) == allowed.end())
      throw Error(ErrorCode::Signature, std::string(to_string(op)) + " cannot turn a " + to_string(in.kind) +
                                            " into a " + to_string(o.kind) + " (" + o.id + ")");
}

Model finish(Model m, const std::vector<Element>& outs, OperatorApplication app) {
  for (const auto& o : outs) {
    if (m.find(o.id)) throw Error(ErrorCode::Invalid, "element id '" + o.id + "' already exists");
    m.elements.push_back(o);
  }
  m.applications.push_back(std::move(app));
  for (const auto& d : validate_model(m))
    if (d.severity == Severity::Error) throw Error(ErrorCode::Invalid, d.message);
  return m;
}

OperatorApplication record(OperatorKind op, const std::string& in, const std::vector<Element>& outs, Strength s,
                           OperatorArgs args = {}) {
  OperatorApplication a;
  a.op = op;
  a.inputs = {in};
  for (const auto& o : outs) a.outputs.push_back(o.id);
  a.strength = s;
  a.args = std::move(args);
  return a;
}

}  // namespace

std::string qualified_region_name(const std::string& qualifier, const std::string& region) {
  std::string r = region;
  if (!r.empty()) r[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(r[0])));
  return qualifier + "_" + r;
}

Model apply_reduce(const Model& m, const std::string& input, const std::vector<Element>& outputs, Strength s) {
  const Element& in = input_of(m, input);
  if (outputs.empty()) throw Error(ErrorCode::Signature, "Reduce needs at least one output");
  check_kinds(OperatorKind::Reduce, in, outputs);
  return finish(m, outputs, record(OperatorKind::Reduce, input, outputs, s));
}

Model apply_interpret(const Model& m, const std::string& input, const Element& output, Strength s) {
  const Element& in = input_of(m, input);
  if (s == Strength::Weakening) throw Error(ErrorCode::Invalid, "Interpret disambiguates or encodes; it never weakens");
  check_kinds(OperatorKind::Interpret, in, {output});
  return finish(m, {output}, record(OperatorKind::Interpret, input, {output}, s));
}

Model apply_operationalize(const Model& m, const std::string& input, const std::vector<Element>& outputs,
                           Strength s) {
  const Element& in = input_of(m, input);
  if (outputs.empty()) throw Error(ErrorCode::Signature, "Operationalize needs at least one output");
  check_kinds(OperatorKind::Operationalize, in, outputs);
  bool only_da = std::all_of(outputs.begin(), outputs.end(), [](const Element& e) { return e.kind == ElementKind::DA; });
  if (only_da) s = Strength::Weakening;
  return finish(m, outputs, record(OperatorKind::Operationalize, input, outputs, s));
}

Model apply_focus(const Model& m, const std::string& input, const FocusArgs& args, Strength s,
                  std::vector<std::string> output_ids) {
  const Element& in = input_of(m, input);
  const QualityStatement& q = quality_input(in, "Focus");
  if (args.targets.empty()) throw Error(ErrorCode::Invalid, "Focus needs at least one target");
  if (s == Strength::Strengthening) throw Error(ErrorCode::Invalid, "Focus weakens or equates, it never strengthens");
  if (!output_ids.empty() && output_ids.size() != args.targets.size())
    throw Error(ErrorCode::Invalid, "Focus needs one output id per target");

  std::vector<Element> outs;
  for (size_t k = 0; k < args.targets.size(); ++k) {
    Element o = in;
    o.id = output_ids.empty() ? (args.targets.size() == 1 ? fresh_id(m, input) : input + "_" + std::to_string(k + 1))
                              : output_ids[k];
    QualityStatement oq = q;
    if (args.on_quality) oq.quality = disj(q.quality, args.targets[k]);
    else oq.subject = disj(q.subject, args.targets[k]);
    o.body = oq;
    outs.push_back(std::move(o));
  }
  return finish(m, outs, record(OperatorKind::Focus, input, outs, s, args));
}

Model apply_scale(const Model& m, const std::string& input, const ScaleArgs& args, std::string output_id) {
  const Element& in = input_of(m, input);
  const QualityStatement& q = quality_input(in, "Scale");
  if (!args.factor) throw Error(ErrorCode::InvalidFactor, "Scale needs a factor or a qualifier");
  const bool down = args.direction == ScaleDirection::Down;
  QualityStatement oq = q;

  if (auto* f = std::get_if<std::pair<Rational, Rational>>(&*args.factor)) {
    auto* iv = std::get_if<Interval>(&q.region);
    if (!iv) throw Error(ErrorCode::RegionMismatch, "a numeric factor needs an interval region in " + input);
    const auto& [lf, hf] = *f;
    if (lf <= 0 || hf <= 0) throw Error(ErrorCode::InvalidFactor, "scaling factors must be positive");
    if (down && !(lf <= 1 && hf >= 1))
      throw Error(ErrorCode::InvalidFactor, "scaling down needs low factor ≤ 1 ≤ high factor");
    if (!down && !(lf >= 1 && hf <= 1))
      throw Error(ErrorCode::InvalidFactor, "scaling up needs low factor ≥ 1 ≥ high factor");
    Interval out = *iv;
    if (out.low) out.low = *out.low * lf;
    if (out.high) out.high = *out.high * hf;
    if (out.low) out.low->canonicalize();
    if (out.high) out.high->canonicalize();
    if (out.low && out.high && *out.low > *out.high)
      throw Error(ErrorCode::InvalidFactor, "scaling up would leave an empty interval");
    // negative bounds move the wrong way under these factors
    bool contained = down ? iv->within(out) : out.within(*iv);
    if (!contained) throw Error(ErrorCode::InvalidFactor, "the factors shift the interval instead of scaling it");
    oq.region = out;
  } else {
    const std::string& qualifier = std::get<std::string>(*args.factor);
    auto* nr = std::get_if<NamedRegion>(&q.region);
    if (!nr) throw Error(ErrorCode::RegionMismatch, "a qualifier needs a named region in " + input);
    const auto axioms = model_axioms(m);
    auto ordered = [&](const std::string& target) {
      DLConcept a = dl::named(nr->name), b = dl::named(target);
      return down ? structurally_subsumes(a, b, axioms) : structurally_subsumes(b, a, axioms);
    };
    std::string target = qualified_region_name(qualifier, nr->name);
    if (!ordered(target)) {
      if (ordered(qualifier) && qualifier != nr->name) target = qualifier;
      else
        throw Error(ErrorCode::NoOrderingAxiom,
                    "no axiom orders " + nr->name + (down ? " below " : " above ") + target);
    }
    oq.region = NamedRegion{target, nr->qualitative};
  }

  Element o = in;
  o.id = output_id.empty() ? fresh_id(m, input) : output_id;
  o.body = oq;
  Strength s = down ? Strength::Weakening : Strength::Strengthening;
  return finish(m, {o}, record(OperatorKind::Scale, input, {o}, s, args));
}

Model apply_deuniversalize(const Model& m, const std::string& input, const UAnnotation& u, std::string output_id) {
  const Element& in = input_of(m, input);
  const QualityStatement& q = quality_input(in, "DeUniversalize");
  if (u.pct_low <= 0 || u.pct_low > 1) throw Error(ErrorCode::InvalidFactor, "percentage must lie in (0, 100%]");
  for (const auto& a : q.annotations)
    if (a.path == u.path)
      throw Error(ErrorCode::AlreadyUniversalized, input + " is already de-universalized on this path");
  Element o = in;
  o.id = output_id.empty() ? fresh_id(m, input) : output_id;
  QualityStatement oq = q;
  oq.annotations.push_back(u);
  o.body = oq;
  expand_u(o);  // throws PathMismatch
  return finish(m, {o}, record(OperatorKind::DeUniversalize, input, {o}, Strength::Weakening, u));
}

Model apply_observe(const Model& m, const std::string& input, const Description& observer, std::string output_id) {
  const Element& in = input_of(m, input);
  const QualityStatement& q = quality_input(in, "Observe");
  Element o = in;
  o.id = output_id.empty() ? fresh_id(m, input) : output_id;
  o.kind = ElementKind::QC;
  QualityStatement oq = q;
  oq.observers.push_back(observer);
  o.body = oq;
  return finish(m, {o}, record(OperatorKind::Observe, input, {o}, Strength::Strengthening, observer));
}

Model apply_resolve(const Model& m, const std::vector<std::string>& inputs, const std::vector<std::string>& kept,
                    const std::vector<Element>& added) {
  for (const auto& id : inputs) input_of(m, id);
  std::set<std::string> want(inputs.begin(), inputs.end());
  bool declared = std::any_of(m.conflicts.begin(), m.conflicts.end(), [&](const auto& c) {
    return std::set<std::string>(c.begin(), c.end()) == want;
  });
  if (!declared) throw Error(ErrorCode::NotAConflict, "the inputs are not a declared conflict");
  for (const auto& k : kept)
    if (!want.count(k)) throw Error(ErrorCode::Invalid, "kept element " + k + " is not among the inputs");
  OperatorApplication a;
  a.op = OperatorKind::Resolve;
  a.inputs = inputs;
  a.outputs = kept;
  for (const auto& e : added) a.outputs.push_back(e.id);
  a.strength = Strength::Weakening;
  return finish(m, added, std::move(a));
}

}  // namespace desiree
