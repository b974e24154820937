#include "desiree/lint.hpp"

#include "desiree/error.hpp"
#include "desiree/parser.hpp"
#include "desiree/reasoner.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>
#include <sstream>

namespace desiree {

const char* to_string(Issue i) {
  switch (i) {
    case Issue::Incomplete: return "Incomplete";
    case Issue::Ambiguous: return "Ambiguous";
    case Issue::Unverifiable: return "Unverifiable";
    case Issue::Unsatisfiable: return "Unsatisfiable";
    case Issue::Inconsistent: return "Inconsistent";
    case Issue::Unmodifiable: return "Unmodifiable";
    case Issue::Redundant: return "Redundant";
    case Issue::Invalid: return "Invalid";
  }
  return "?";
}

namespace {

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Lower-cased words; "100%" stays one token.
std::vector<std::string> words(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '%' || c == '_' || c == '\'') {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

bool has_phrase(const std::vector<std::string>& ws, const std::string& phrase, size_t* at = nullptr) {
  auto ps = words(phrase);
  if (ps.empty() || ps.size() > ws.size()) return false;
  for (size_t i = 0; i + ps.size() <= ws.size(); ++i)
    if (std::equal(ps.begin(), ps.end(), ws.begin() + static_cast<long>(i))) {
      if (at) *at = i + ps.size();
      return true;
    }
  return false;
}

bool contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

bool has_successor(const Model& m, const std::string& id, std::initializer_list<OperatorKind> ops) {
  for (const auto* a : m.applications_from(id))
    for (auto op : ops)
      if (a->op == op) return true;
  return false;
}

// Does the subject range over a whole class rather than named individuals?
bool whole_class(const Description& subject) {
  for (const auto& d : disjuncts(subject))
    if (!d.is<Enumeration>()) return true;
  return false;
}

Element normalized(const Element& e) {
  Element out = e;
  if (auto* f = e.function()) {
    FunctionDesc fd = *f;
    for (auto& s : fd.slots) s.filler = normalize(s.filler);
    std::sort(fd.slots.begin(), fd.slots.end(),
              [](const SlotRestriction& a, const SlotRestriction& b) { return a.slot < b.slot; });
    out.body = fd;
  } else if (auto* q = e.quality()) {
    QualityStatement qs = *q;
    qs.quality = normalize(qs.quality);
    qs.subject = normalize(qs.subject);
    for (auto& o : qs.observers) o = normalize(o);
    out.body = qs;
  } else if (auto* s = e.subsumption()) {
    out.body = Subsumption{normalize(s->sub), normalize(s->sup)};
  } else {
    out.body = NLText{lower(trim(std::get<NLText>(e.body).text))};
  }
  return out;
}

std::string nl_text(const Element& e) {
  if (auto* t = std::get_if<NLText>(&e.body)) return t->text;
  return {};
}

}  // namespace

LintConfig parse_lint_config(std::string_view text) {
  LintConfig c;
  std::stringstream ss{std::string(text)};
  std::string line;
  int n = 0;
  while (std::getline(ss, line)) {
    ++n;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::Parse, "config line " + std::to_string(n) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    auto vals = split_list(line.substr(eq + 1));
    if (key == "universal") c.universal = vals;
    else if (key == "required.default") c.default_required = vals;
    else if (key.rfind("required.", 0) == 0 && key.size() > 9) c.required[key.substr(9)] = vals;
    else if (key.rfind("category.", 0) == 0 && key.size() > 9) c.categories[key.substr(9)] = vals;
    else if (key == "conjunctions") c.conjunctions = vals;
    else if (key == "verbs") c.verbs = vals;
    else if (key == "attachment") c.attachment = vals;
    else if (key == "entities") c.entity_vocabulary = vals;
    else if (key == "qualities") c.quality_vocabulary = vals;
    else throw Error(ErrorCode::Parse, "config line " + std::to_string(n) + ": unknown key '" + key + "'");
  }
  return c;
}

std::vector<LintFinding> lint_model(const Model& m, const LintConfig& cfg) {
  std::vector<LintFinding> out;
  const auto dropped = m.dropped();
  auto add = [&](const std::string& id, Issue i, std::string detail, std::optional<OperatorKind> op) {
    LintFinding f{id, i, std::move(detail), op, std::nullopt};
    if (auto it = m.spans.find(id); it != m.spans.end()) f.span = it->second;
    out.push_back(std::move(f));
  };
  auto required_for = [&](const std::string& head) {
    if (auto it = cfg.required.find(head); it != cfg.required.end()) return it->second;
    for (const auto& [cat, heads] : cfg.categories)
      if (contains(heads, head))
        if (auto it = cfg.required.find(cat); it != cfg.required.end()) return it->second;
    return cfg.default_required;
  };

  std::map<std::string, std::string> seen_bodies;  // canonical body → first id
  for (const auto& e : m.elements) {
    if (dropped.count(e.id)) continue;
    const std::string text = nl_text(e);
    const auto ws = words(text);

    // (a) universally quantified quality requirements
    if (is_quality_kind(e.kind) && !has_successor(m, e.id, {OperatorKind::DeUniversalize})) {
      const QualityStatement* q = e.quality();
      std::string hit;
      for (const auto& t : cfg.universal)
        if (has_phrase(ws, t)) hit = "'" + t + "'";
      if (q && q->annotations.empty() && whole_class(q->subject))
        hit = "the whole class " + print_description(q->subject);
      if (!hit.empty())
        add(e.id, Issue::Unsatisfiable, "applies to " + hit + " without exception; consider a percentage",
            OperatorKind::DeUniversalize);
    }

    // (b) vague regions nobody measures
    if (e.kind == ElementKind::QG && !has_successor(m, e.id, {OperatorKind::Operationalize, OperatorKind::Observe})) {
      const QualityStatement* q = e.quality();
      auto* nr = q ? std::get_if<NamedRegion>(&q->region) : nullptr;
      if (nr && nr->qualitative && q->observers.empty())
        add(e.id, Issue::Unverifiable, "'" + nr->name + "' has no measurable counterpart", OperatorKind::Operationalize);
    }

    // (c) functions missing required slots
    if (const FunctionDesc* f = e.function();
        f && !has_successor(m, e.id, {OperatorKind::Reduce, OperatorKind::Interpret})) {
      for (const auto& slot : required_for(f->head)) {
        if (f->find(slot)) continue;
        std::string v = lower(f->head);
        std::string q = slot == "actor"    ? "Who will " + v + "?"
                        : slot == "object" ? "What will " + v + " act on?"
                        : slot == "target" ? v + " to whom?"
                                           : "missing <" + slot + ">";
        if (slot == "target" && !q.empty()) q[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(q[0])));
        add(e.id, Issue::Incomplete, q, OperatorKind::Reduce);
      }
    }

    // (d) duplicates and bundled concerns
    std::string key = std::string(keyword(e.kind)) + "|" + print_body(normalized(e));
    if (auto [it, fresh] = seen_bodies.emplace(key, e.id); !fresh)
      add(e.id, Issue::Redundant, "same content as " + it->second, std::nullopt);
    if (!text.empty()) {
      for (const auto& conj : cfg.conjunctions) {
        size_t at = 0;
        if (has_phrase(ws, conj, &at) && at < ws.size() && contains(cfg.verbs, ws[at])) {
          add(e.id, Issue::Unmodifiable, "joins separate concerns with '" + conj + " " + ws[at] + "'",
              OperatorKind::Reduce);
          break;
        }
      }
    }

    // (f) attachment ambiguity and double readings
    for (const auto& a : cfg.attachment)
      if (has_phrase(ws, a)) {
        add(e.id, Issue::Ambiguous, "'" + a + "' may attach to more than one phrase", OperatorKind::Interpret);
        break;
      }
    if (const FunctionDesc* f = e.function()) {
      for (const auto& s : f->slots)
        if (auto* at = s.filler.as<Atomic>();
            at && contains(cfg.entity_vocabulary, at->name) && contains(cfg.quality_vocabulary, at->name))
          add(e.id, Issue::Ambiguous, at->name + " reads as an entity and as a quality", OperatorKind::Interpret);
    }
  }

  // (e) inconsistency
  auto cons = check_consistency(m);
  if (cons.status == ConsistencyStatus::Inconsistent) {
    for (const auto& ex : cons.explanations) {
      std::string id;
      for (const auto& l : ex.axioms)
        if (m.find(l)) {
          id = l;
          break;
        }
      add(id, Issue::Inconsistent, ex.message, OperatorKind::Resolve);
    }
  }
  const auto axioms = model_axioms(m);
  for (const auto& c : free_symbols(m).concepts)
    if (structurally_subsumes(dl::named(c), dl::bottom(), axioms))
      add("", Issue::Inconsistent, c + " falls under disjoint classes", std::nullopt);
  for (const auto& e : m.elements) {
    if (dropped.count(e.id) || e.is_nl() || e.kind == ElementKind::DA || e.kind == ElementKind::FC ||
        e.kind == ElementKind::SC)
      continue;
    std::optional<ElementTranslation> t;
    try {
      t = translate_element(e);
    } catch (const Error&) {
      continue;
    }
    if (!t) continue;
    DLConcept body = t->content;
    if (auto* s = e.subsumption()) body = translate_description(s->sub);
    if (structurally_subsumes(body, dl::bottom(), axioms))
      add(e.id, Issue::Inconsistent, "no instance can satisfy " + e.id + " under the declared axioms", std::nullopt);
  }

  std::stable_sort(out.begin(), out.end(), [](const LintFinding& a, const LintFinding& b) {
    if (a.element != b.element) return a.element < b.element;
    if (a.issue != b.issue) return a.issue < b.issue;
    return a.detail < b.detail;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<KindGuess> classify_hint(std::string_view raw) {
  const std::string text = lower(std::string(raw));
  std::map<ElementKind, KindGuess> g;
  auto hit = [&](ElementKind k, int w, const std::string& trig) {
    auto& x = g[k];
    x.kind = k;
    x.score += w;
    x.triggers.push_back(trig);
  };
  auto find = [&](const char* pattern, ElementKind k, int w) {
    std::regex re(pattern);
    for (std::sregex_iterator it(text.begin(), text.end(), re), end; it != end; ++it) hit(k, w, it->str());
  };
  static const char* adjectives =
      "fast|quick|slow|secure|reliable|available|usable|simple|easy|efficient|accurate|good|intuitive|responsive|"
      "scalable|robust|friendly|cheap|low|high|small|large|timely|attractive|consistent|maintainable|portable";
  static const char* participles = "booked|paid|sent|done|made|known|shown|given|taken|seen|built|sold|bought|kept|"
                                   "held|met|set|found|told|met|[a-z]+ed";

  find(R"(\b(shall|should|must|will) (allow|enable|let)\b)", ElementKind::F, 2);
  find(R"(\b(be )?able to\b)", ElementKind::F, 2);
  find(R"(\b(shall|must|should) (?!be\b|have\b|include\b|contain\b)[a-z]+)", ElementKind::F, 1);
  find((std::string(R"(\bbe (?!able\b)()") + participles + R"()\b)").c_str(), ElementKind::FG, 2);
  find((std::string(R"(\b(be|is|are)( very| highly)? ()") + adjectives + R"()\b)").c_str(), ElementKind::QG, 2);
  find(R"(\bwithin \d+)", ElementKind::QC, 2);
  find(R"(\b(shall|should|must|will) (have|include|contain|consist of)\b)", ElementKind::CTG, 2);
  find(R"(\b(is|are) an? \b)", ElementKind::DA, 2);
  find(R"(\bwill be used in\b)", ElementKind::DA, 2);

  std::vector<KindGuess> out;
  for (auto& [k, v] : g) out.push_back(std::move(v));
  std::stable_sort(out.begin(), out.end(), [](const KindGuess& a, const KindGuess& b) { return a.score > b.score; });
  return out;
}

}  // namespace desiree
