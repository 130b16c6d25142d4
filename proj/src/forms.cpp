#include "ontoforge/forms.hpp"

#include <cctype>

namespace ontoforge {

std::string_view Form::head() const {
  if (kind != Kind::List || children.empty() || !children.front().is_identifier()) return {};
  return local_name(children.front().text);
}

bool is_valid_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto c0 = static_cast<unsigned char>(name[0]);
  if (!(std::isalpha(c0) || c0 == '_') || c0 >= 0x80) return false;
  for (char ch : name.substr(1)) {
    auto c = static_cast<unsigned char>(ch);
    if (c >= 0x80 || !(std::isalnum(c) || c == '_' || c == '-')) return false;
  }
  return true;
}

std::string_view local_name(std::string_view name) {
  auto slash = name.rfind('/');
  if (slash == std::string_view::npos || slash + 1 == name.size()) return name;
  return name.substr(slash + 1);
}

namespace {

bool is_delimiter(char c) {
  return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '[' ||
         c == ']' || c == '"' || c == ';';
}

class Reader {
 public:
  Reader(std::string_view text, std::string_view file) : text_(text), file_(file) {}

  std::vector<Form> read_all() {
    std::vector<Form> out;
    while (true) {
      skip_space();
      if (at_end()) break;
      char c = peek();
      if (c == ')' || c == ']') fail(std::string("unexpected '") + c + "'");
      out.push_back(read_one());
    }
    return out;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  SourceLocation here() const { return {std::string(file_), line_, col_}; }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++col_;  // count code points, not continuation bytes
    }
    return c;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw Error(ErrorCode::ParseError, message, here());
  }
  [[noreturn]] void fail_at(const SourceLocation& at, const std::string& message) const {
    throw Error(ErrorCode::ParseError, message, at);
  }

  void skip_space() {
    while (!at_end()) {
      char c = peek();
      if (c == ';') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
        advance();
      } else {
        break;
      }
    }
  }

  Form read_one() {
    Form form;
    form.where = here();
    char c = peek();
    if (c == '(' || c == '[') {
      char close = c == '(' ? ')' : ']';
      form.kind = c == '(' ? Form::Kind::List : Form::Kind::Bracket;
      advance();
      while (true) {
        skip_space();
        if (at_end()) {
          fail_at(form.where, std::string("unbalanced '") + c + "': missing '" + close + "'");
        }
        char d = peek();
        if (d == close) {
          advance();
          break;
        }
        if (d == ')' || d == ']') fail(std::string("mismatched '") + d + "'");
        form.children.push_back(read_one());
      }
      return form;
    }
    if (c == '"') {
      form.kind = Form::Kind::Text;
      advance();
      while (true) {
        if (at_end()) fail_at(form.where, "unterminated string");
        char d = advance();
        if (d == '"') break;
        if (d == '\\') {
          if (at_end()) fail_at(form.where, "unterminated string");
          char e = advance();
          switch (e) {
            case 'n': form.text += '\n'; break;
            case 't': form.text += '\t'; break;
            default: form.text += e; break;
          }
        } else {
          form.text += d;
        }
      }
      return form;
    }
    std::string token;
    while (!at_end() && !is_delimiter(peek())) token += advance();
    if (token.front() == ':') {
      if (token.size() == 1) fail_at(form.where, "empty keyword");
      form.kind = Form::Kind::Keyword;
      form.text = token.substr(1);
    } else {
      form.kind = Form::Kind::Identifier;
      form.text = std::move(token);
    }
    return form;
  }

  std::string_view text_;
  std::string_view file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

void print_into(const Form& form, std::string& out) {
  switch (form.kind) {
    case Form::Kind::List:
    case Form::Kind::Bracket: {
      out += form.is_list() ? '(' : '[';
      for (std::size_t i = 0; i < form.children.size(); ++i) {
        if (i) out += ' ';
        print_into(form.children[i], out);
      }
      out += form.is_list() ? ')' : ']';
      break;
    }
    case Form::Kind::Identifier: out += form.text; break;
    case Form::Kind::Keyword: out += ':' + form.text; break;
    case Form::Kind::Text:
      out += '"';
      for (char c : form.text) {
        switch (c) {
          case '"': out += "\\\""; break;
          case '\\': out += "\\\\"; break;
          case '\n': out += "\\n"; break;
          case '\t': out += "\\t"; break;
          default: out += c;
        }
      }
      out += '"';
      break;
  }
}

}  // namespace

std::vector<Form> read_forms(std::string_view text, std::string_view file_name) {
  return Reader(text, file_name).read_all();
}

std::string print_form(const Form& form) {
  std::string out;
  print_into(form, out);
  return out;
}

std::string print_forms(std::span<const Form> forms) {
  std::string out;
  for (const auto& f : forms) {
    print_into(f, out);
    out += '\n';
  }
  return out;
}

}  // namespace ontoforge
