#include "ontoforge/polyglot.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ontoforge::polyglot {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\f'; }

std::string unescape(std::string_view raw) {
  std::string out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] != '\\' || i + 1 == raw.size()) {
      out += raw[i];
      continue;
    }
    char c = raw[++i];
    switch (c) {
      case 'n':
        out += '\n';
        break;
      case 't':
        out += '\t';
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

const std::string* PropertiesTable::find(std::string_view key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return &v;
  }
  return nullptr;
}

PropertiesTable parse_properties(std::string_view text, std::string source) {
  PropertiesTable table;
  table.source = source;
  std::map<std::string, int> first_line;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    std::string line(text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos));
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;
    line.erase(std::remove(line.begin(), line.end(), '\r'), line.end());
    std::size_t start = 0;
    while (start < line.size() && is_space(line[start])) ++start;
    if (start == line.size() || line[start] == '#' || line[start] == '!') continue;

    std::size_t eq = std::string::npos;
    for (std::size_t i = start; i < line.size(); ++i) {
      if (line[i] == '\\') {
        ++i;
      } else if (line[i] == '=') {
        eq = i;
        break;
      }
    }
    SourceLocation where{source, line_no, 1};
    if (eq == std::string::npos) {
      throw Error(ErrorCode::MalformedLine, "expected 'key=value'", where);
    }
    std::size_t key_end = eq;
    while (key_end > start && is_space(line[key_end - 1])) --key_end;
    std::string key = unescape(std::string_view(line).substr(start, key_end - start));
    std::size_t value_start = eq + 1;
    while (value_start < line.size() && is_space(line[value_start])) ++value_start;
    std::string value = unescape(std::string_view(line).substr(value_start));
    if (key.empty()) throw Error(ErrorCode::MalformedLine, "empty key", where);
    if (auto [it, inserted] = first_line.try_emplace(key, line_no); !inserted) {
      throw Error(ErrorCode::DuplicateKey,
                  "key '" + key + "' repeated (first on line " + std::to_string(it->second) + ")", where);
    }
    table.entries.emplace_back(std::move(key), std::move(value));
  }
  return table;
}

LabelReport apply_labels(Environment& env, const PropertiesTable& table, std::string_view lang) {
  LabelReport report;
  auto classes = env.named_classes();
  std::set<std::string, std::less<>> class_set(classes.begin(), classes.end());
  std::set<std::string, std::less<>> labelled;
  Ontology& ont = env.ontology();
  for (const auto& [key, value] : table.entries) {
    if (!class_set.contains(key)) {
      report.unknown.push_back(key);
      continue;
    }
    ++report.applied;
    if (value.empty()) continue;
    labelled.insert(key);
    Entity cls = *env.lookup(key);
    AnnotationAssertion axiom{vocab::rdfs_label(), cls.iri, AnnotationValue(value, std::string(lang))};
    if (ont.add(axiom)) ++report.added;
  }
  for (const auto& name : classes) {
    if (!labelled.contains(name)) report.missing.push_back(name);
  }
  std::sort(report.missing.begin(), report.missing.end());
  return report;
}

std::string emit_skeleton(const Environment& env, std::string_view lang) {
  auto classes = env.named_classes();
  std::sort(classes.begin(), classes.end());
  std::string out = "# namespace: " + env.ns() + " lang: " + std::string(lang) + "\n";
  for (const auto& name : classes) out += name + "=\n";
  return out;
}

std::string skeleton_file_name(std::string_view ns, std::string_view lang) {
  auto dot = ns.rfind('.');
  std::string_view last = dot == std::string_view::npos ? ns : ns.substr(dot + 1);
  return std::string(last) + "label_" + std::string(lang) + ".properties";
}

}  // namespace ontoforge::polyglot
