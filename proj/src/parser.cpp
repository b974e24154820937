#include "desiree/parser.hpp"

#include "desiree/error.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace desiree {

namespace {

enum class Tok { Ident, Var, Number, String, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

struct SyntaxError {
  SourceSpan span;
  std::string message;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  size_t i = 0;
  int line = 1, col = 1;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
  };
  auto push = [&](Tok k, std::string text, int l, int c) {
    out.push_back({k, std::move(text), {l, c, line, col}});
  };
  struct Multi { const char* utf8; const char* punct; };
  static const Multi unicode[] = {
      {"\xE2\x88\xA8", "|"},  {"\xE2\x88\x92", "-"},  {"\xE2\x88\xA9", "&"},  {"\xE2\x8A\x93", "&"},
      {"\xE2\x89\xA4", "<="}, {"\xE2\x89\xA5", ">="}, {"\xE2\x8A\x91", ":<"},
  };
  static const char* two[] = {":=", ":<", "::", "<=", ">=", "->"};

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    int l = line, co = col;
    if (ident_start(c)) {
      size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      std::string t(src.substr(i, j - i));
      advance(j - i);
      push(Tok::Ident, t, l, co);
      continue;
    }
    if (c == '?' && i + 1 < src.size() && ident_start(src[i + 1])) {
      size_t j = i + 1;
      while (j < src.size() && ident_char(src[j])) ++j;
      std::string t(src.substr(i, j - i));
      advance(j - i);
      push(Tok::Var, t, l, co);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      auto digits = [&] {
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      };
      digits();
      if (j + 1 < src.size() && src[j] == '.' && std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        ++j;
        digits();
      }
      if (j + 1 < src.size() && src[j] == '/' && std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        ++j;
        digits();
      }
      if (j < src.size() && src[j] == '%') ++j;
      std::string t(src.substr(i, j - i));
      advance(j - i);
      push(Tok::Number, t, l, co);
      continue;
    }
    if (c == '"') {
      std::string t;
      size_t j = i + 1;
      bool closed = false;
      while (j < src.size()) {
        if (src[j] == '\\' && j + 1 < src.size()) {
          t += src[j + 1];
          j += 2;
        } else if (src[j] == '"') {
          closed = true;
          ++j;
          break;
        } else {
          t += src[j++];
        }
      }
      if (!closed) throw SyntaxError{{l, co, l, co + 1}, "unterminated string"};
      advance(j - i);
      push(Tok::String, t, l, co);
      continue;
    }
    bool matched = false;
    for (const auto& m : unicode) {
      std::string_view u(m.utf8);
      if (src.substr(i, u.size()) == u) {
        advance(u.size());
        push(Tok::Punct, m.punct, l, co);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    for (const char* t : two) {
      if (src.substr(i, 2) == t) {
        advance(2);
        push(Tok::Punct, t, l, co);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string_view(";,.()[]{}<>|&-*@=:").find(c) != std::string_view::npos) {
      advance(1);
      push(Tok::Punct, std::string(1, c), l, co);
      continue;
    }
    throw SyntaxError{{l, co, l, co + 1}, std::string("unexpected character '") + c + "'"};
  }
  out.push_back({Tok::End, "", {line, col, line, col}});
  return out;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::String: return "string";
    default: return "'" + t.text + "'";
  }
}

struct Pending {
  OperatorApplication app;
  bool explicit_strength = false;
  SourceSpan span;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  Model parse_model_text() {
    Model m;
    bool braced = false;
    if (is_ident("model")) {
      next();
      if (peek().kind == Tok::Ident) m.name = next().text;
      if (is_punct("{")) {
        next();
        braced = true;
      } else {
        expect(";");
      }
    }
    while (true) {
      if (braced && is_punct("}")) {
        next();
        break;
      }
      if (peek().kind == Tok::End) {
        if (braced) fail("expected '}'");
        break;
      }
      statement(m);
    }
    if (peek().kind != Tok::End) fail("expected end of input");
    finish_applications(m);
    return m;
  }

  Description parse_description_only() {
    Description d = description();
    if (peek().kind != Tok::End) fail("unexpected " + describe(peek()));
    return d;
  }

  std::vector<ParseDiagnostic> extra;  // id-level problems found while parsing
  std::vector<SourceSpan> app_spans;   // parallel to Model::applications

 private:
  std::vector<Token> t_;
  size_t p_ = 0;
  std::vector<Pending> pending_;

  const Token& peek(size_t k = 0) const { return t_[std::min(p_ + k, t_.size() - 1)]; }
  const Token& next() { return t_[std::min(p_++, t_.size() - 1)]; }
  bool is_punct(const char* s, size_t k = 0) const {
    return peek(k).kind == Tok::Punct && peek(k).text == s;
  }
  bool is_ident(const char* s, size_t k = 0) const {
    return peek(k).kind == Tok::Ident && peek(k).text == s;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError{peek().span, msg}; }
  void expect(const char* s) {
    if (!is_punct(s)) fail(std::string("expected '") + s + "' but found " + describe(peek()));
    next();
  }
  // "<a:<b: C>>" lexes ":<"; inside a slot it means ':' then '<'.
  void colon() {
    if (is_punct(":<")) {
      t_[p_].text = "<";
      return;
    }
    expect(":");
  }
  std::string ident(const char* what = "identifier") {
    if (peek().kind != Tok::Ident) fail(std::string("expected ") + what + " but found " + describe(peek()));
    return next().text;
  }

  // ---- statements -------------------------------------------------------

  void statement(Model& m) {
    const Token& t = peek();
    if (t.kind != Tok::Ident) fail("expected a statement but found " + describe(t));
    if (auto k = kind_from_keyword(t.text)) return element(m, *k);
    static const char* ops[] = {"reduce", "interpret", "operationalize", "focus", "scale_up",
                                "scale_down", "deuniv", "observe", "resolve"};
    for (const char* op : ops)
      if (t.text == op) return application(m);
    if (t.text == "conflict") {
      next();
      auto ids = id_set();
      expect(";");
      m.conflicts.push_back(std::move(ids));
      return;
    }
    if (t.text == "fulfilled") {
      next();
      do {
        m.fulfilled_marks.push_back(ident("element id"));
      } while (is_punct(",") && (next(), true));
      expect(";");
      return;
    }
    if (t.text == "axiom") {
      next();
      Description a = description();
      expect(":<");
      Description b = description();
      expect(";");
      m.axioms.push_back({a, b});
      return;
    }
    if (t.text == "regions") return regions(m);
    if (t.text == "world") return world(m);
    fail("unknown statement '" + t.text + "'");
  }

  void element(Model& m, ElementKind kind) {
    SourceSpan start = next().span;
    const Token& idt = peek();
    std::string id = ident("element id");
    expect(":=");
    Element e{id, kind, NLText{}};
    e.body = body(kind);
    SourceSpan end = peek().span;
    expect(";");
    if (m.find(id)) extra.push_back({idt.span, "duplicate element id '" + id + "'", "duplicate-id"});
    m.spans[id] = {start.line, start.column, end.end_line, end.end_column};
    m.elements.push_back(std::move(e));
  }

  Body body(ElementKind kind) {
    if (peek().kind == Tok::String) return NLText{next().text};
    if (is_quality_kind(kind)) return quality_statement();
    if (kind == ElementKind::Goal && looks_like_quality()) return quality_statement();
    SourceSpan at = peek().span;
    Description d = description();
    if (is_punct(":<")) {
      next();
      Description sup = description();
      if (kind == ElementKind::F)
        throw SyntaxError{at, "kind/body mismatch: a function needs a head and slots"};
      return Subsumption{d, sup};
    }
    if (kind == ElementKind::F || kind == ElementKind::Goal) {
      auto f = as_function(d);
      if (!f) throw SyntaxError{at, "kind/body mismatch: expected a function head followed by slots"};
      return *f;
    }
    fail(std::string("kind/body mismatch: expected ':<' for a ") + to_string(kind));
  }

  static std::optional<FunctionDesc> as_function(const Description& d) {
    auto cs = conjuncts(d);
    if (cs.empty() || !cs[0].is<Atomic>()) return std::nullopt;
    FunctionDesc f{cs[0].as<Atomic>()->name, {}};
    for (size_t i = 1; i < cs.size(); ++i) {
      auto* s = cs[i].as<SlotRestriction>();
      if (!s) return std::nullopt;
      f.slots.push_back(*s);
    }
    return f;
  }

  // IDENT '(' ... ')' '::'   or   '(' IDENT ('|' IDENT)* ')' '('
  bool looks_like_quality() const {
    size_t k = 0;
    if (peek().kind == Tok::Ident) {
      k = 1;
    } else if (is_punct("(")) {
      k = 1;
      while (peek(k).kind == Tok::Ident || (peek(k).kind == Tok::Punct && peek(k).text == "|")) ++k;
      if (!is_punct(")", k)) return false;
      ++k;
    } else {
      return false;
    }
    if (!is_punct("(", k)) return false;
    int depth = 0;
    for (;; ++k) {
      const Token& t = peek(k);
      if (t.kind == Tok::End) return false;
      if (t.kind != Tok::Punct) continue;
      if (t.text == "(") ++depth;
      if (t.text == ")" && --depth == 0) return is_punct("::", k + 1);
    }
  }

  QualityStatement quality_statement() {
    QualityStatement q{thing(), thing(), NamedRegion{}, {}, {}};
    if (is_punct("(")) {
      next();
      std::vector<Description> qs{atomic(ident("quality name"))};
      while (is_punct("|")) {
        next();
        qs.push_back(atomic(ident("quality name")));
      }
      expect(")");
      q.quality = disj_all(qs);
    } else {
      q.quality = atomic(ident("quality name"));
    }
    expect("(");
    q.subject = description();
    expect(")");
    expect("::");
    q.region = region_position();
    while (is_punct("<") && is_ident("observed_by", 1)) {
      next();
      next();
      expect(":");
      q.observers.push_back(description());
      expect(">");
    }
    while (is_ident("U") && is_punct("(", 1)) q.annotations.push_back(u_annotation());
    return q;
  }

  // U(?X, <inheres_in: <run_of: ?X>>, 80%)
  UAnnotation u_annotation() {
    next();
    expect("(");
    UAnnotation u;
    if (peek().kind != Tok::Var) fail("expected a variable such as ?X");
    u.var = next().text;
    expect(",");
    int depth = 0;
    while (is_punct("<")) {
      next();
      u.path.push_back(ident("slot"));
      colon();
      ++depth;
    }
    if (depth == 0) fail("expected a slot path such as <inheres_in: ?X>");
    if (peek().kind != Tok::Var || peek().text != u.var) fail("expected " + u.var + " at the end of the path");
    next();
    for (int i = 0; i < depth; ++i) expect(">");
    expect(",");
    u.pct_low = number();
    expect(")");
    return u;
  }

  Rational number() {
    bool neg = false;
    if (is_punct("-")) {
      next();
      neg = true;
    }
    if (peek().kind != Tok::Number) fail("expected a number but found " + describe(peek()));
    const Token& t = next();
    auto r = parse_rational(t.text);
    if (!r) throw SyntaxError{t.span, "malformed number '" + t.text + "'"};
    return neg ? Rational(-*r) : *r;
  }

  bool number_ahead() const {
    return peek().kind == Tok::Number || (is_punct("-") && peek(1).kind == Tok::Number);
  }

  // Unit after a number: IDENT or '(' IDENT ['.'] ')'
  std::string opt_unit() {
    if (is_punct("(") && peek(1).kind == Tok::Ident &&
        (is_punct(")", 2) || (is_punct(".", 2) && is_punct(")", 3)))) {
      next();
      std::string u = next().text;
      if (is_punct(".")) {
        next();
        u += ".";
      }
      expect(")");
      return u;
    }
    if (peek().kind == Tok::Ident) return next().text;
    return {};
  }

  std::string opt_unit_in_brackets() {
    if (is_punct("(") || peek().kind == Tok::Ident) return opt_unit();
    return {};
  }

  Interval interval_brackets() {
    expect("[");
    Interval iv;
    std::string u1, u2;
    if (is_punct("*")) next();
    else {
      iv.low = number();
      u1 = opt_unit_in_brackets();
    }
    expect(",");
    if (is_punct("*")) next();
    else {
      iv.high = number();
    }
    u2 = opt_unit_in_brackets();
    expect("]");
    if (!u1.empty() && !u2.empty() && u1 != u2) fail("interval bounds use different units");
    iv.unit = u2.empty() ? u1 : u2;
    return iv;
  }

  ValueSet value_set_rest() {  // after '{'
    ValueSet vs;
    while (!is_punct("}")) {
      if (number_ahead()) vs.values.push_back(Value{number()});
      else if (peek().kind == Tok::String || peek().kind == Tok::Ident) vs.values.push_back(Value{next().text});
      else fail("expected a value but found " + describe(peek()));
      if (!is_punct(",")) break;
      next();
    }
    expect("}");
    if (is_punct("(") && peek(1).kind == Tok::Ident) vs.unit = opt_unit();
    return vs;
  }

  RegionExpr region_position() {
    if (is_punct("[")) return interval_brackets();
    if (is_punct("{")) {
      next();
      return value_set_rest();
    }
    if (is_punct("<=") || is_punct(">=")) {
      bool upper = next().text == "<=";
      Interval iv;
      Rational n = number();
      (upper ? iv.high : iv.low) = n;
      if (!(is_ident("U") && is_punct("(", 1))) iv.unit = opt_unit();
      return iv;
    }
    if (is_punct("@")) {
      next();
      return NamedRegion{ident("region name"), false};
    }
    if (number_ahead()) {
      Interval iv;
      iv.low = iv.high = number();
      if (!(is_ident("U") && is_punct("(", 1))) iv.unit = opt_unit();
      return iv;
    }
    if (peek().kind == Tok::Ident) return NamedRegion{next().text, true};
    fail("expected a region but found " + describe(peek()));
  }

  // ---- descriptions -----------------------------------------------------

  Description description() {
    Description d = union_expr();
    while (is_punct("-")) {
      next();
      d = minus(d, union_expr());
    }
    return d;
  }

  Description union_expr() {
    Description d = inter_expr();
    while (is_punct("|")) {
      next();
      d = disj(d, inter_expr());
    }
    return d;
  }

  bool primary_start(size_t k = 0) const {
    const Token& t = peek(k);
    if (t.kind == Tok::Ident) return !(t.text == "U" && is_punct("(", k + 1));
    if (t.kind != Tok::Punct) return false;
    if (t.text == "[") return peek(k + 1).kind != Tok::Ident;  // "[weaken]" closes an application
    return t.text == "{" || t.text == "<" || t.text == "(" || t.text == "@";
  }

  Description inter_expr() {
    Description d = postfix();
    while (true) {
      if (is_punct("&")) {
        next();
        d = conj(d, postfix());
      } else if (primary_start() && !is_slot_observer()) {
        d = conj(d, postfix());
      } else {
        break;
      }
    }
    return d;
  }

  bool is_slot_observer() const { return is_punct("<") && is_ident("observed_by", 1) && is_punct(":", 2); }

  Description postfix() {
    Description d = primary();
    while (is_punct(".") && peek(1).kind == Tok::Ident) {
      next();
      d = projection(d, next().text);
    }
    return d;
  }

  Description primary() {
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      next();
      if (t.text == "Thing") return thing();
      if (t.text == "Nothing") return nothing();
      return atomic(t.text);
    }
    if (is_punct("(")) {
      next();
      Description d = description();
      expect(")");
      return d;
    }
    if (is_punct("{")) {
      next();
      if (peek().kind == Tok::Ident && (is_punct(",", 1) || is_punct("}", 1))) {
        std::vector<std::string> ids;
        while (true) {
          ids.push_back(ident("individual"));
          if (!is_punct(",")) break;
          next();
        }
        expect("}");
        return enumeration(std::move(ids));
      }
      if (is_punct("}")) fail("empty enumeration");
      return region(value_set_rest());
    }
    if (is_punct("[")) return region(interval_brackets());
    if (is_punct("@")) {
      next();
      return region(NamedRegion{ident("region name"), false});
    }
    if (is_punct("<")) return slot_restriction();
    fail("expected a description but found " + describe(t));
  }

  Description slot_restriction() {
    expect("<");
    std::string s = ident("slot name");
    colon();
    Modifier mod;
    if ((is_ident("SOME") || is_ident("some")) && primary_start(1)) {
      next();
      mod = Modifier::some();
    } else if ((is_ident("ONLY") || is_ident("only")) && primary_start(1)) {
      next();
      mod = Modifier::only();
    } else if ((is_punct("<=") || is_punct(">=")) && peek(1).kind == Tok::Number) {
      bool le = peek().text == "<=";
      if (primary_start(2) && is_count(peek(1).text)) {
        next();
        unsigned n = count(next());
        mod = le ? Modifier::at_most(n) : Modifier::at_least(n);
      } else {
        next();
        Interval iv;
        (le ? iv.high : iv.low) = number();
        Description f = region(iv);
        expect(">");
        return slot(s, f, mod);
      }
    } else if (peek().kind == Tok::Number) {
      if (primary_start(1) && is_count(peek().text)) {
        mod = Modifier::exactly(count(next()));
      } else {
        Interval iv;
        iv.low = iv.high = number();
        Description f = region(iv);
        expect(">");
        return slot(s, f, mod);
      }
    }
    Description f = description();
    expect(">");
    return slot(s, f, mod);
  }

  static bool is_count(const std::string& text) {
    return !text.empty() && std::all_of(text.begin(), text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  }
  unsigned count(const Token& t) {
    unsigned long v = std::stoul(t.text);
    return static_cast<unsigned>(v);
  }

  // ---- applications -----------------------------------------------------

  std::vector<std::string> id_set() {
    std::vector<std::string> ids;
    expect("{");
    while (!is_punct("}")) {
      ids.push_back(ident("element id"));
      if (!is_punct(",")) break;
      next();
    }
    expect("}");
    return ids;
  }

  std::vector<std::string> ids_or_one() {
    if (is_punct("{")) return id_set();
    return {ident("element id")};
  }

  void application(Model&) {
    Pending p;
    p.span = peek().span;
    std::string kw = next().text;
    auto& a = p.app;
    if (kw == "reduce") a.op = OperatorKind::Reduce;
    else if (kw == "interpret") a.op = OperatorKind::Interpret;
    else if (kw == "operationalize") a.op = OperatorKind::Operationalize;
    else if (kw == "focus") a.op = OperatorKind::Focus;
    else if (kw == "deuniv") a.op = OperatorKind::DeUniversalize;
    else if (kw == "observe") a.op = OperatorKind::Observe;
    else if (kw == "resolve") a.op = OperatorKind::Resolve;
    else {
      a.op = OperatorKind::Scale;
      a.args = ScaleArgs{kw == "scale_up" ? ScaleDirection::Up : ScaleDirection::Down, std::nullopt};
    }
    a.inputs = ids_or_one();
    expect("->");
    a.outputs = ids_or_one();

    if (a.op == OperatorKind::Scale && is_ident("by")) {
      next();
      auto& sa = std::get<ScaleArgs>(a.args);
      if (is_punct("(")) {
        next();
        Rational lo = number();
        expect(",");
        Rational hi = number();
        expect(")");
        sa.factor = std::pair<Rational, Rational>{lo, hi};
      } else {
        sa.factor = ident("qualifier");
      }
    } else if (a.op == OperatorKind::Focus && is_ident("via")) {
      next();
      FocusArgs fa;
      std::string what = ident("'quality' or 'subject'");
      if (what != "quality" && what != "subject") fail("expected 'quality' or 'subject'");
      fa.on_quality = what == "quality";
      expect("(");
      fa.targets.push_back(description());
      while (is_punct(",")) {
        next();
        fa.targets.push_back(description());
      }
      expect(")");
      a.args = std::move(fa);
    } else if (a.op == OperatorKind::DeUniversalize && is_ident("with")) {
      next();
      if (!is_ident("U")) fail("expected U(...)");
      a.args = u_annotation();
    } else if (a.op == OperatorKind::Observe && is_ident("by")) {
      next();
      a.args = description();
    }

    if (is_punct("[")) {
      next();
      std::string s = ident("strength");
      if (s == "strengthen") a.strength = Strength::Strengthening;
      else if (s == "weaken") a.strength = Strength::Weakening;
      else if (s == "equate") a.strength = Strength::Equating;
      else fail("expected strengthen, weaken or equate");
      expect("]");
      p.explicit_strength = true;
    }
    expect(";");
    pending_.push_back(std::move(p));
  }

  void finish_applications(Model& m) {
    for (auto& p : pending_) {
      auto& a = p.app;
      if (!p.explicit_strength) {
        switch (a.op) {
          case OperatorKind::Focus:
          case OperatorKind::DeUniversalize:
          case OperatorKind::Resolve: a.strength = Strength::Weakening; break;
          case OperatorKind::Scale:
            a.strength = std::get<ScaleArgs>(a.args).direction == ScaleDirection::Up ? Strength::Strengthening
                                                                                     : Strength::Weakening;
            break;
          case OperatorKind::Operationalize: {
            bool only_da = !a.outputs.empty();
            for (const auto& o : a.outputs) {
              const Element* e = m.find(o);
              if (!e || e->kind != ElementKind::DA) only_da = false;
            }
            a.strength = only_da ? Strength::Weakening : Strength::Strengthening;
            break;
          }
          default: a.strength = Strength::Strengthening;
        }
      }
      m.applications.push_back(a);
      app_spans.push_back(p.span);
    }
  }

  // ---- regions and world blocks ------------------------------------------

  void regions(Model& m) {
    next();
    QualitySpace qs;
    qs.quality = ident("quality name");
    expect("{");
    while (!is_punct("}")) {
      PrototypeRegion r;
      r.name = ident("region name");
      expect("=");
      std::string form = ident("'points' or 'interval'");
      if (form == "points") {
        expect("{");
        while (!is_punct("}")) {
          r.points.push_back(number());
          if (!is_punct(",")) break;
          next();
        }
        expect("}");
      } else if (form == "interval") {
        r.is_interval = true;
        expect("[");
        r.low = number();
        expect(",");
        r.high = number();
        expect("]");
      } else {
        fail("expected 'points' or 'interval'");
      }
      expect(";");
      qs.regions.push_back(std::move(r));
    }
    expect("}");
    if (is_punct(";")) next();
    m.quality_spaces.push_back(std::move(qs));
  }

  DataValue data_value() {
    DataValue v;
    if (peek().kind == Tok::String) {
      v.value = Value{next().text};
      return v;
    }
    if (number_ahead()) {
      v.value = Value{number()};
      if (!is_ident("observed_by")) v.unit = opt_unit();
      return v;
    }
    v.value = Value{ident("value")};
    return v;
  }

  void world(Model& m) {
    next();
    World w;
    expect("{");
    while (!is_punct("}")) {
      std::string kw = ident("world statement");
      if (kw == "individual") {
        std::string id = ident("individual");
        w.add_individual(id);
        if (is_punct(":")) {
          next();
          do {
            w.assert_concept(ident("concept"), id);
          } while (is_punct(",") && (next(), true));
        }
      } else if (kw == "slot") {
        std::string s = ident("slot");
        expect("(");
        std::string a = ident("individual");
        expect(",");
        std::string b = ident("individual");
        expect(")");
        w.assert_slot(s, a, b);
      } else if (kw == "data") {
        std::string s = ident("slot");
        expect("(");
        std::string a = ident("individual");
        expect(")");
        expect("=");
        w.assert_data(s, a, data_value());
      } else if (kw == "quality") {
        QualityRecord q;
        q.id = ident("quality id");
        expect(":");
        q.type = ident("quality type");
        if (ident("'inheres'") != "inheres") fail("expected 'inheres'");
        q.subject = ident("subject");
        if (is_ident("value")) {
          next();
          q.value = data_value();
        }
        if (is_ident("observed_by")) {
          next();
          expect("{");
          while (!is_punct("}")) {
            q.observers.push_back(ident("observer"));
            if (!is_punct(",")) break;
            next();
          }
          expect("}");
        }
        w.add_quality(std::move(q));
      } else if (kw == "region") {
        std::string name = ident("region name");
        expect("=");
        w.define_region(name, interval_brackets());
      } else {
        fail("unknown world statement '" + kw + "'");
      }
      expect(";");
    }
    expect("}");
    if (is_punct(";")) next();
    if (m.world) fail("only one world block is allowed");
    m.world = std::move(w);
  }
};

// ---- printing -------------------------------------------------------------

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string unit_suffix(const std::string& u) { return u.empty() ? "" : " (" + u + ")"; }

std::string value_text(const Value& v) { return v.is_number() ? to_string(v.number()) : quote(v.text()); }

int prec(const Description& d) {
  if (d.is<Difference>()) return 1;
  if (d.is<Union>()) return 2;
  if (d.is<Intersection>()) return 3;
  return 4;
}

void print_desc(std::ostream& os, const Description& d, int ctx);

std::string modifier_text(const Modifier& m) {
  switch (m.kind) {
    case ModKind::ExactlyOne: return "";
    case ModKind::AtMost: return "<=" + std::to_string(m.n) + " ";
    case ModKind::AtLeast: return ">=" + std::to_string(m.n) + " ";
    case ModKind::Exactly: return std::to_string(m.n) + " ";
    case ModKind::Some: return "SOME ";
    case ModKind::Only: return "ONLY ";
  }
  return "";
}

void print_desc(std::ostream& os, const Description& d, int ctx) {
  bool paren = prec(d) < ctx;
  if (paren) os << "(";
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Atomic>) {
          os << x.name;
        } else if constexpr (std::is_same_v<T, ThingT>) {
          os << "Thing";
        } else if constexpr (std::is_same_v<T, NothingT>) {
          os << "Nothing";
        } else if constexpr (std::is_same_v<T, Enumeration>) {
          os << "{";
          for (size_t i = 0; i < x.ids.size(); ++i) os << (i ? ", " : "") << x.ids[i];
          os << "}";
        } else if constexpr (std::is_same_v<T, SlotRestriction>) {
          os << "<" << x.slot << ": " << modifier_text(x.mod);
          print_desc(os, x.filler, 0);
          os << ">";
        } else if constexpr (std::is_same_v<T, InverseProjection>) {
          print_desc(os, x.source, 4);
          os << "." << x.slot;
        } else if constexpr (std::is_same_v<T, Intersection>) {
          print_desc(os, x.left, 3);
          os << " ";
          print_desc(os, x.right, 4);
        } else if constexpr (std::is_same_v<T, Union>) {
          print_desc(os, x.left, 2);
          os << " | ";
          print_desc(os, x.right, 3);
        } else if constexpr (std::is_same_v<T, Difference>) {
          print_desc(os, x.left, 1);
          os << " - ";
          print_desc(os, x.right, 2);
        } else if constexpr (std::is_same_v<T, RegionNode>) {
          os << print_region(x.region);
        }
      },
      d.node().v);
  if (paren) os << ")";
}

std::string path_pattern(const UAnnotation& u) {
  std::string s;
  for (const auto& p : u.path) s += "<" + p + ": ";
  s += u.var;
  for (size_t i = 0; i < u.path.size(); ++i) s += ">";
  return s;
}

std::string pct_text(const Rational& r) { return to_string(Rational(r * 100)) + "%"; }

std::string u_text(const UAnnotation& u) {
  return "U(" + u.var + ", " + path_pattern(u) + ", " + pct_text(u.pct_low) + ")";
}

std::string quality_text(const QualityStatement& q) {
  std::ostringstream os;
  auto qs = disjuncts(q.quality);
  if (qs.size() == 1) {
    print_desc(os, q.quality, 4);
  } else {
    os << "(";
    for (size_t i = 0; i < qs.size(); ++i) {
      if (i) os << " | ";
      print_desc(os, qs[i], 4);
    }
    os << ")";
  }
  os << " (" << print_description(q.subject) << ") :: " << print_region(q.region);
  for (const auto& o : q.observers) os << " <observed_by: " << print_description(o) << ">";
  for (const auto& u : q.annotations) os << " " << u_text(u);
  return os.str();
}

std::string id_list(const std::vector<std::string>& ids, bool force_braces) {
  if (ids.size() == 1 && !force_braces) return ids[0];
  std::string s = "{";
  for (size_t i = 0; i < ids.size(); ++i) s += (i ? ", " : "") + ids[i];
  return s + "}";
}

std::string data_text(const DataValue& v) {
  if (v.value.is_number()) return to_string(v.value.number()) + unit_suffix(v.unit);
  return quote(v.value.text());
}

}  // namespace

std::string print_region(const RegionExpr& r) {
  if (auto* nr = std::get_if<NamedRegion>(&r)) return (nr->qualitative ? "" : "@") + nr->name;
  if (auto* iv = std::get_if<Interval>(&r)) {
    return "[" + (iv->low ? to_string(*iv->low) : std::string("*")) + ", " +
           (iv->high ? to_string(*iv->high) : std::string("*")) + unit_suffix(iv->unit) + "]";
  }
  const auto& vs = std::get<ValueSet>(r);
  std::string s = "{";
  for (size_t i = 0; i < vs.values.size(); ++i) s += (i ? ", " : "") + value_text(vs.values[i]);
  return s + "}" + unit_suffix(vs.unit);
}

std::string print_description(const Description& d) {
  std::ostringstream os;
  print_desc(os, d, 0);
  return os.str();
}

std::string print_body(const Element& e) {
  return std::visit(
      [](const auto& b) -> std::string {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, NLText>) {
          return quote(b.text);
        } else if constexpr (std::is_same_v<T, FunctionDesc>) {
          std::string s = b.head;
          for (const auto& sl : b.slots) s += " " + print_description(slot(sl.slot, sl.filler, sl.mod));
          return s;
        } else if constexpr (std::is_same_v<T, QualityStatement>) {
          return quality_text(b);
        } else {
          return print_description(b.sub) + " :< " + print_description(b.sup);
        }
      },
      e.body);
}

std::string print_element(const Element& e) {
  return std::string(keyword(e.kind)) + " " + e.id + " := " + print_body(e) + ";";
}

std::string print_application(const OperatorApplication& a) {
  std::string kw;
  switch (a.op) {
    case OperatorKind::Reduce: kw = "reduce"; break;
    case OperatorKind::Interpret: kw = "interpret"; break;
    case OperatorKind::Focus: kw = "focus"; break;
    case OperatorKind::Scale:
      kw = std::get<ScaleArgs>(a.args).direction == ScaleDirection::Up ? "scale_up" : "scale_down";
      break;
    case OperatorKind::DeUniversalize: kw = "deuniv"; break;
    case OperatorKind::Resolve: kw = "resolve"; break;
    case OperatorKind::Operationalize: kw = "operationalize"; break;
    case OperatorKind::Observe: kw = "observe"; break;
  }
  bool multi_in = a.op == OperatorKind::Resolve;
  bool multi_out = a.is_one_to_many() || a.op == OperatorKind::Resolve;
  std::string s = kw + " " + id_list(a.inputs, multi_in) + " -> " + id_list(a.outputs, multi_out);
  if (auto* sa = std::get_if<ScaleArgs>(&a.args); sa && sa->factor) {
    if (auto* p = std::get_if<0>(&*sa->factor))
      s += " by (" + to_string(p->first) + ", " + to_string(p->second) + ")";
    else
      s += " by " + std::get<1>(*sa->factor);
  } else if (auto* fa = std::get_if<FocusArgs>(&a.args)) {
    s += std::string(" via ") + (fa->on_quality ? "quality" : "subject") + " (";
    for (size_t i = 0; i < fa->targets.size(); ++i) s += (i ? ", " : "") + print_description(fa->targets[i]);
    s += ")";
  } else if (auto* u = std::get_if<UAnnotation>(&a.args)) {
    s += " with " + u_text(*u);
  } else if (auto* d = std::get_if<Description>(&a.args)) {
    s += " by " + print_description(*d);
  }
  const char* st = a.strength == Strength::Strengthening ? "strengthen"
                   : a.strength == Strength::Weakening   ? "weaken"
                                                         : "equate";
  return s + " [" + st + "];";
}

std::string print_model(const Model& m) {
  std::ostringstream os;
  os << "model" << (m.name.empty() ? "" : " " + m.name) << " {\n";
  for (const auto& e : m.elements) os << "  " << print_element(e) << "\n";
  for (const auto& a : m.applications) os << "  " << print_application(a) << "\n";
  for (const auto& c : m.conflicts) os << "  conflict " << id_list(c, true) << ";\n";
  if (!m.fulfilled_marks.empty()) {
    os << "  fulfilled ";
    for (size_t i = 0; i < m.fulfilled_marks.size(); ++i) os << (i ? ", " : "") << m.fulfilled_marks[i];
    os << ";\n";
  }
  for (const auto& ax : m.axioms)
    os << "  axiom " << print_description(ax.sub) << " :< " << print_description(ax.sup) << ";\n";
  for (const auto& qs : m.quality_spaces) {
    os << "  regions " << qs.quality << " {\n";
    for (const auto& r : qs.regions) {
      os << "    " << r.name << " = ";
      if (r.is_interval) {
        os << "interval [" << to_string(r.low) << ", " << to_string(r.high) << "]";
      } else {
        os << "points {";
        for (size_t i = 0; i < r.points.size(); ++i) os << (i ? ", " : "") << to_string(r.points[i]);
        os << "}";
      }
      os << ";\n";
    }
    os << "  }\n";
  }
  if (m.world) {
    const World& w = *m.world;
    os << "  world {\n";
    std::set<std::string> mentioned;
    for (const auto& [ind, _] : w.concept_facts()) mentioned.insert(ind);
    for (const auto& [s, a, b] : w.slot_facts()) mentioned.insert({a, b});
    for (const auto& [k, _] : w.data_facts()) mentioned.insert(k.second);
    for (const auto& q : w.qualities()) {
      mentioned.insert(q.id);
      mentioned.insert(q.subject);
      mentioned.insert(q.observers.begin(), q.observers.end());
    }
    std::vector<std::string> inds = w.declared_individuals();
    std::sort(inds.begin(), inds.end());
    for (const auto& ind : inds) {
      std::vector<std::string> cs;
      for (const auto& [i, c] : w.concept_facts())
        if (i == ind) cs.push_back(c);
      if (cs.empty() && mentioned.count(ind)) continue;
      os << "    individual " << ind;
      for (size_t i = 0; i < cs.size(); ++i) os << (i ? ", " : " : ") << cs[i];
      os << ";\n";
    }
    for (const auto& [s, a, b] : w.slot_facts()) os << "    slot " << s << "(" << a << ", " << b << ");\n";
    for (const auto& [k, v] : w.data_facts())
      os << "    data " << k.first << "(" << k.second << ") = " << data_text(v) << ";\n";
    for (const auto& q : w.qualities()) {
      os << "    quality " << q.id << " : " << q.type << " inheres " << q.subject;
      if (q.value) os << " value " << data_text(*q.value);
      if (!q.observers.empty()) os << " observed_by " << id_list(q.observers, true);
      os << ";\n";
    }
    for (const auto& [name, iv] : w.regions()) os << "    region " << name << " = " << print_region(iv) << ";\n";
    os << "  }\n";
  }
  os << "}\n";
  return os.str();
}

ParseResult parse_model(std::string_view text) {
  ParseResult res;
  try {
    Parser p(lex(text));
    Model m = p.parse_model_text();
    res.diagnostics = p.extra;
    for (const auto& d : validate_model(m)) {
      if (d.severity != Severity::Error) continue;
      SourceSpan span;
      if (auto it = m.spans.find(d.element); it != m.spans.end()) {
        span = it->second;
      } else {
        // an id that names no element: point at the first application using it
        for (size_t i = 0; i < m.applications.size(); ++i) {
          const auto& a = m.applications[i];
          if (std::find(a.inputs.begin(), a.inputs.end(), d.element) != a.inputs.end() ||
              std::find(a.outputs.begin(), a.outputs.end(), d.element) != a.outputs.end()) {
            span = p.app_spans[i];
            break;
          }
        }
      }
      res.diagnostics.push_back({span, d.message, d.code});
    }
    if (res.diagnostics.empty()) res.model = std::move(m);
  } catch (const SyntaxError& e) {
    res.diagnostics.push_back({e.span, e.message, "syntax"});
  }
  return res;
}

Description parse_description(std::string_view text) {
  try {
    Parser p(lex(text));
    return p.parse_description_only();
  } catch (const SyntaxError& e) {
    throw Error(ErrorCode::Parse, std::to_string(e.span.line) + ":" + std::to_string(e.span.column) + ": " +
                                      e.message);
  }
}

std::string format_diagnostic(const ParseDiagnostic& d, std::string_view file) {
  std::string s;
  if (!file.empty()) s += std::string(file) + ":";
  s += std::to_string(d.span.line) + ":" + std::to_string(d.span.column) + ": error: " + d.message;
  return s;
}

}  // namespace desiree
