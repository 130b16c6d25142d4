#include "ontoforge/importer.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <unordered_map>

namespace ontoforge::importer {

namespace {

struct Token {
  enum class Kind { Open, Close, Name, IriRef, Literal, End } kind;
  std::string text;
  std::string lang;  // literals only
  bool typed = false;
  SourceLocation where;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

  Token next() {
    skip_space();
    SourceLocation here{file_, line_, col_};
    if (pos_ >= text_.size()) return {Token::Kind::End, {}, {}, false, here};
    char c = text_[pos_];
    if (c == '(') {
      advance();
      return {Token::Kind::Open, "(", {}, false, here};
    }
    if (c == ')') {
      advance();
      return {Token::Kind::Close, ")", {}, false, here};
    }
    if (c == '<') {
      advance();
      std::string iri;
      while (pos_ < text_.size() && text_[pos_] != '>') {
        if (text_[pos_] == '\n') break;
        iri += text_[pos_];
        advance();
      }
      if (pos_ >= text_.size() || text_[pos_] != '>') {
        throw Error(ErrorCode::ParseError, "unterminated IRI", here);
      }
      advance();
      return {Token::Kind::IriRef, iri, {}, false, here};
    }
    if (c == '"') {
      advance();
      std::string value;
      bool closed = false;
      while (pos_ < text_.size()) {
        char d = text_[pos_];
        advance();
        if (d == '\\' && pos_ < text_.size()) {
          value += text_[pos_];
          advance();
        } else if (d == '"') {
          closed = true;
          break;
        } else {
          value += d;
        }
      }
      if (!closed) throw Error(ErrorCode::ParseError, "unterminated string literal", here);
      Token tok{Token::Kind::Literal, value, {}, false, here};
      if (pos_ < text_.size() && text_[pos_] == '@') {
        advance();
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-')) {
          tok.lang += text_[pos_];
          advance();
        }
        if (tok.lang.empty()) throw Error(ErrorCode::ParseError, "empty language tag", here);
      } else if (text_.substr(pos_, 2) == "^^") {
        advance();
        advance();
        Token type = next();
        std::string xsd_string = std::string(vocab::kXsd) + "string";
        if (!((type.kind == Token::Kind::Name && type.text == "xsd:string") ||
              (type.kind == Token::Kind::IriRef && type.text == xsd_string))) {
          throw Error(ErrorCode::UnsupportedConstruct, "typed literal '" + type.text + "' is not supported", here);
        }
        tok.typed = true;
      }
      return tok;
    }
    std::string name;
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == '"' || d == '<') break;
      name += d;
      advance();
    }
    return {Token::Kind::Name, name, {}, false, here};
  }

 private:
  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, std::string file) : lexer_(text, std::move(file)) { shift(); }

  Ontology parse() {
    while (tok_.kind == Token::Kind::Name && tok_.text == "Prefix") prefix();
    if (tok_.kind != Token::Kind::Name || tok_.text != "Ontology") {
      fail("expected Ontology(");
    }
    shift();
    expect_open();
    if (tok_.kind != Token::Kind::IriRef) fail("expected the ontology IRI");
    Iri ontology_iri = make_iri(tok_.text);
    shift();
    if (tok_.kind == Token::Kind::IriRef) shift();  // version IRI
    while (tok_.kind != Token::Kind::Close) {
      if (tok_.kind == Token::Kind::End) fail("missing ')' closing Ontology(");
      axioms_.push_back(axiom());
    }
    shift();
    if (tok_.kind != Token::Kind::End) fail("unexpected text after the ontology");

    Ontology ont(ontology_iri);
    for (const auto& [label, base] : prefixes_) ont.set_prefix(label, base);
    for (const auto& [iri, kind] : used_order_) {
      if (!declared_.contains(iri)) {
        axioms_.push_back(Declaration{{kind, Iri(iri)}});
        declared_.emplace(iri, kind);
      }
    }
    ont.add(axioms_);
    return ont;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw Error(ErrorCode::ParseError, message, tok_.where);
  }

  void shift() { tok_ = lexer_.next(); }

  void expect_open() {
    if (tok_.kind != Token::Kind::Open) fail("expected '('");
    shift();
  }
  void expect_close() {
    if (tok_.kind != Token::Kind::Close) fail("expected ')'");
    shift();
  }

  Iri make_iri(const std::string& text) const {
    try {
      return Iri(text);
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), tok_.where);
    }
  }

  void prefix() {
    shift();
    expect_open();
    if (tok_.kind != Token::Kind::Name || tok_.text.size() < 2 ||
        tok_.text.compare(tok_.text.size() - 2, 2, ":=") != 0) {
      fail("expected 'label:='");
    }
    std::string label = tok_.text.substr(0, tok_.text.size() - 2);
    shift();
    if (tok_.kind != Token::Kind::IriRef) fail("expected a prefix IRI");
    prefixes_[label] = tok_.text;
    shift();
    expect_close();
  }

  Iri iri() {
    if (tok_.kind == Token::Kind::IriRef) {
      Iri out = make_iri(tok_.text);
      shift();
      return out;
    }
    if (tok_.kind != Token::Kind::Name) fail("expected an IRI");
    auto colon = tok_.text.find(':');
    if (colon == std::string::npos) fail("expected a prefixed name, got '" + tok_.text + "'");
    auto it = prefixes_.find(tok_.text.substr(0, colon));
    std::string full;
    if (it != prefixes_.end()) {
      full = it->second + tok_.text.substr(colon + 1);
    } else {
      static const std::map<std::string, std::string_view> kStandard = {
          {"owl", vocab::kOwl}, {"rdf", vocab::kRdf}, {"rdfs", vocab::kRdfs}, {"xsd", vocab::kXsd}};
      auto std_it = kStandard.find(tok_.text.substr(0, colon));
      if (std_it == kStandard.end()) fail("unknown prefix in '" + tok_.text + "'");
      full = std::string(std_it->second) + tok_.text.substr(colon + 1);
    }
    Iri out = make_iri(full);
    shift();
    return out;
  }

  Entity use(EntityKind kind, Iri iri) {
    if (!used_.contains(iri.str())) {
      used_.insert(iri.str());
      used_order_.emplace_back(iri.str(), kind);
    }
    return {kind, std::move(iri)};
  }

  Entity cls() { return use(EntityKind::Class, iri()); }
  Entity prop() { return use(EntityKind::ObjectProperty, iri()); }

  ClassExpression expression() {
    static const std::string kThing = std::string(vocab::kOwl) + "Thing";
    static const std::string kNothing = std::string(vocab::kOwl) + "Nothing";
    if (tok_.kind == Token::Kind::IriRef ||
        (tok_.kind == Token::Kind::Name && tok_.text.find(':') != std::string::npos)) {
      Iri i = iri();
      if (i.str() == kThing) return ClassExpression::thing();
      if (i.str() == kNothing) return ClassExpression::nothing();
      return ClassExpression::named(use(EntityKind::Class, std::move(i)));
    }
    if (tok_.kind != Token::Kind::Name) fail("expected a class expression");
    std::string head = tok_.text;
    SourceLocation where = tok_.where;
    shift();
    expect_open();
    ClassExpression out = ClassExpression::thing();
    if (head == "ObjectIntersectionOf" || head == "ObjectUnionOf") {
      std::vector<ClassExpression> ops;
      while (tok_.kind != Token::Kind::Close) ops.push_back(expression());
      if (ops.size() < 2) fail(head + " needs at least two operands");
      out = head == "ObjectIntersectionOf" ? ClassExpression::intersection_of(std::move(ops))
                                           : ClassExpression::union_of(std::move(ops));
    } else if (head == "ObjectComplementOf") {
      out = ClassExpression::complement_of(expression());
    } else if (head == "ObjectSomeValuesFrom" || head == "ObjectAllValuesFrom") {
      Entity p = prop();
      ClassExpression f = expression();
      out = head == "ObjectSomeValuesFrom" ? ClassExpression::some(p, std::move(f))
                                           : ClassExpression::only(p, std::move(f));
    } else {
      throw Error(ErrorCode::UnsupportedConstruct, "unsupported class expression '" + head + "'", where);
    }
    expect_close();
    return out;
  }

  Axiom axiom() {
    if (tok_.kind != Token::Kind::Name) fail("expected an axiom");
    std::string head = tok_.text;
    SourceLocation where = tok_.where;
    shift();
    expect_open();
    auto out = [&]() -> Axiom {
      if (head == "Import") {
        if (tok_.kind != Token::Kind::IriRef) fail("expected an import IRI");
        Iri target = make_iri(tok_.text);
        shift();
        return Import{target};
      }
      if (head == "Declaration") {
        if (tok_.kind != Token::Kind::Name) fail("expected an entity kind");
        std::string kind_name = tok_.text;
        SourceLocation kind_where = tok_.where;
        shift();
        EntityKind kind;
        if (kind_name == "Class") {
          kind = EntityKind::Class;
        } else if (kind_name == "ObjectProperty") {
          kind = EntityKind::ObjectProperty;
        } else if (kind_name == "AnnotationProperty") {
          kind = EntityKind::AnnotationProperty;
        } else {
          throw Error(ErrorCode::UnsupportedConstruct, "unsupported declaration '" + kind_name + "'", kind_where);
        }
        expect_open();
        Entity e{kind, iri()};
        expect_close();
        declared_.emplace(e.iri.str(), kind);
        return Declaration{e};
      }
      if (head == "SubClassOf") {
        auto sub = expression();
        auto sup = expression();
        return SubClassOf{std::move(sub), std::move(sup)};
      }
      if (head == "EquivalentClasses") {
        EquivalentClasses a;
        while (tok_.kind != Token::Kind::Close) a.members.push_back(expression());
        return a;
      }
      if (head == "DisjointClasses") {
        DisjointClasses a;
        while (tok_.kind != Token::Kind::Close) a.members.push_back(cls());
        return a;
      }
      if (head == "SubObjectPropertyOf") {
        Entity sub = prop();
        Entity sup = prop();
        return SubObjectPropertyOf{sub, sup};
      }
      if (head == "ObjectPropertyDomain") {
        Entity p = prop();
        return ObjectPropertyDomain{p, expression()};
      }
      if (head == "ObjectPropertyRange") {
        Entity p = prop();
        return ObjectPropertyRange{p, expression()};
      }
      if (head == "FunctionalObjectProperty") return FunctionalObjectProperty{prop()};
      if (head == "TransitiveObjectProperty") return TransitiveObjectProperty{prop()};
      if (head == "AnnotationAssertion") {
        Entity p{EntityKind::AnnotationProperty, iri()};
        if (!vocab::is_builtin(p)) p = use(EntityKind::AnnotationProperty, p.iri);
        Iri subject = iri();
        if (tok_.kind != Token::Kind::Literal) fail("expected a literal");
        std::optional<std::string> lang;
        if (!tok_.lang.empty()) lang = tok_.lang;
        AnnotationValue value(tok_.text, lang);
        shift();
        return AnnotationAssertion{p, subject, value};
      }
      throw Error(ErrorCode::UnsupportedConstruct, "unsupported construct '" + head + "'", where);
    }();
    expect_close();
    return out;
  }

  Lexer lexer_;
  Token tok_{Token::Kind::End, {}, {}, false, {}};
  std::map<std::string, std::string> prefixes_;
  std::vector<Axiom> axioms_;
  std::unordered_map<std::string, EntityKind> declared_;
  std::set<std::string> used_;
  std::vector<std::pair<std::string, EntityKind>> used_order_;
};

bool ident_start(unsigned char c) { return c < 0x80 && (std::isalpha(c) || c == '_'); }
bool ident_char(unsigned char c) { return c < 0x80 && (std::isalnum(c) || c == '_' || c == '-'); }

}  // namespace

Ontology parse_functional(std::string_view text, std::string_view file_name) {
  return Parser(text, std::string(file_name)).parse();
}

std::string label_to_identifier(std::string_view label) {
  auto begin = label.find_first_not_of(" \t\r\n");
  auto end = label.find_last_not_of(" \t\r\n");
  std::string_view trimmed = begin == std::string_view::npos ? std::string_view{} : label.substr(begin, end - begin + 1);
  std::string out;
  for (char c : trimmed) {
    auto u = static_cast<unsigned char>(c);
    char mapped = ident_char(u) ? c : '_';
    if (mapped == '_' && !out.empty() && out.back() == '_') continue;
    out += mapped;
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  if (out.empty() || std::all_of(out.begin(), out.end(), [](char c) { return c == '_' || c == '-'; })) {
    throw Error(ErrorCode::UnmappableLabel, "label '" + std::string(label) + "' has no usable characters");
  }
  if (!ident_start(static_cast<unsigned char>(out.front()))) out.insert(out.begin(), '_');
  return out;
}

std::size_t intern_external(Environment& env, std::shared_ptr<const Ontology> ontology, Naming naming,
                            const std::optional<std::string>& filter) {
  std::unordered_map<std::string, std::vector<const AnnotationValue*>> labels;
  if (naming == Naming::Label) {
    for (const auto& axiom : ontology->axioms()) {
      if (const auto* a = std::get_if<AnnotationAssertion>(&axiom); a && a->property == vocab::rdfs_label()) {
        labels[a->subject.str()].push_back(&a->value);
      }
    }
  }

  struct Candidate {
    std::string base;
    Entity entity;
  };
  std::vector<Candidate> candidates;
  for (const auto& e : ontology->declared_entities()) {
    if (e.kind != EntityKind::Class && e.kind != EntityKind::ObjectProperty) continue;
    if (filter && e.iri.str().compare(0, filter->size(), *filter) != 0) continue;
    std::string fragment(e.iri.fragment());
    auto from_fragment = [&] {
      return is_valid_identifier(fragment) ? fragment : label_to_identifier(fragment);
    };
    if (naming == Naming::Fragment) {
      candidates.push_back({from_fragment(), e});
      continue;
    }
    auto it = labels.find(e.iri.str());
    if (it == labels.end()) {
      env.warn("'" + e.iri.str() + "' has no rdfs:label; using its IRI fragment");
      candidates.push_back({from_fragment(), e});
      continue;
    }
    std::vector<const AnnotationValue*> preferred;
    for (const auto* v : it->second) {
      if (!v->lang || *v->lang == "en") preferred.push_back(v);
    }
    auto& pool = preferred.empty() ? it->second : preferred;
    std::sort(pool.begin(), pool.end(), [](const AnnotationValue* a, const AnnotationValue* b) {
      return std::tie(a->lang, a->text) < std::tie(b->lang, b->text);
    });
    if (pool.size() > 1) {
      env.warn("'" + e.iri.str() + "' has " + std::to_string(pool.size()) + " candidate labels; using \"" +
               pool.front()->text + "\"");
    }
    try {
      candidates.push_back({label_to_identifier(pool.front()->text), e});
    } catch (const Error&) {
      env.warn("label \"" + pool.front()->text + "\" of '" + e.iri.str() +
               "' cannot be made an identifier; using its IRI fragment");
      candidates.push_back({from_fragment(), e});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.base, a.entity.iri) < std::tie(b.base, b.entity.iri);
  });

  ExternalSource source{ontology, {}};
  for (const auto& c : candidates) {
    std::string name = c.base;
    for (int n = 2; env.is_bound(name); ++n) name = c.base + "_" + std::to_string(n);
    if (name != c.base) {
      env.warn("identifier '" + c.base + "' is taken; '" + c.entity.iri.str() + "' is bound as '" + name + "'");
    }
    env.bind(name, c.entity);
    source.rows.emplace_back(name, c.entity.iri);
  }
  std::size_t count = source.rows.size();
  env.add_external(ontology->iri().str(), std::move(source));
  return count;
}

MemoTable memorise_save(const Environment& env, const Iri& source) {
  auto it = env.externals().find(source.str());
  if (it == env.externals().end()) {
    throw Error(ErrorCode::WrongOntology, "namespace '" + env.ns() + "' has no external ontology <" +
                                              source.str() + ">");
  }
  MemoTable table{source, it->second.rows};
  std::sort(table.rows.begin(), table.rows.end());
  return table;
}

std::string format_memo(const MemoTable& table) {
  std::string out = "#memo " + table.source.str() + "\n";
  for (const auto& [name, iri] : table.rows) out += name + "\t" + iri.str() + "\n";
  return out;
}

MemoTable parse_memo(std::string_view text) {
  std::optional<MemoTable> table;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    std::string line(text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos));
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    SourceLocation where{"<memo>", line_no, 1};
    if (!table) {
      if (line.rfind("#memo ", 0) != 0) throw Error(ErrorCode::ParseError, "memo files start with '#memo <iri>'", where);
      table = MemoTable{Iri(line.substr(6)), {}};
      continue;
    }
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw Error(ErrorCode::MalformedLine, "expected 'identifier<TAB>iri'", where);
    table->rows.emplace_back(line.substr(0, tab), Iri(line.substr(tab + 1)));
  }
  if (!table) throw Error(ErrorCode::ParseError, "empty memo file");
  std::sort(table->rows.begin(), table->rows.end());
  return *table;
}

MemoReport memorise_check(const MemoTable& current, const MemoTable& saved) {
  if (current.source != saved.source) {
    throw Error(ErrorCode::WrongOntology, "memo was recorded for <" + saved.source.str() + ">, not <" +
                                              current.source.str() + ">");
  }
  std::map<std::string, std::vector<std::string>> names_by_iri;
  for (const auto& [name, iri] : current.rows) names_by_iri[iri.str()].push_back(name);
  MemoReport report;
  for (const auto& [old_name, iri] : saved.rows) {
    auto it = names_by_iri.find(iri.str());
    if (it == names_by_iri.end()) {
      report.vanished.push_back(iri);
      continue;
    }
    if (std::find(it->second.begin(), it->second.end(), old_name) != it->second.end()) continue;
    report.deprecated.push_back({old_name, it->second.front(), iri});
  }
  report.stable = report.deprecated.empty() && report.vanished.empty();
  return report;
}

std::size_t install_deprecations(Environment& env, const MemoReport& report) {
  std::size_t installed = 0;
  for (const auto& r : report.deprecated) {
    auto entity = env.lookup(r.new_name);
    if (!entity) continue;
    if (env.is_bound(r.old_name)) {
      env.warn("cannot keep '" + r.old_name + "' as an alias of '" + r.new_name + "': the name is in use");
      continue;
    }
    env.deprecate(r.old_name, *entity, r.new_name);
    ++installed;
  }
  for (const auto& iri : report.vanished) {
    env.warn("<" + iri.str() + "> is recorded in the memo but no longer present");
  }
  return installed;
}

}  // namespace ontoforge::importer
