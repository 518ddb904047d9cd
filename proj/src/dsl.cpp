#include "gml/dsl.hpp"

#include <cstdint>
#include <utility>

namespace gml::dsl {

namespace {

enum class Tok : std::uint8_t { Ident, String, Arrow, BiArrow, LBrace, RBrace, Equals };

struct Token {
  Tok kind;
  SourceSpan span;
  std::string text;  // identifier text, or unescaped string contents
};

struct Line {
  std::vector<Token> tokens;
  SourceSpan end;  // zero-length span at the line terminator (or EOF)
  bool lex_error = false;
};

bool ident_start(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool ident_char(unsigned char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

// Length of the well-formed UTF-8 sequence at `pos`, or 0.
std::size_t utf8_sequence(std::string_view s, std::size_t pos) {
  auto byte = [&](std::size_t i) -> unsigned {
    return i < s.size() ? static_cast<unsigned char>(s[i]) : 0x100U;
  };
  auto cont = [&](std::size_t i, unsigned lo = 0x80, unsigned hi = 0xBF) {
    unsigned b = byte(i);
    return b >= lo && b <= hi;
  };
  unsigned b0 = byte(pos);
  if (b0 < 0x80) return 1;
  if (b0 >= 0xC2 && b0 <= 0xDF) return cont(pos + 1) ? 2 : 0;
  if (b0 == 0xE0) return cont(pos + 1, 0xA0) && cont(pos + 2) ? 3 : 0;
  if ((b0 >= 0xE1 && b0 <= 0xEC) || b0 == 0xEE || b0 == 0xEF)
    return cont(pos + 1) && cont(pos + 2) ? 3 : 0;
  if (b0 == 0xED) return cont(pos + 1, 0x80, 0x9F) && cont(pos + 2) ? 3 : 0;
  if (b0 == 0xF0) return cont(pos + 1, 0x90) && cont(pos + 2) && cont(pos + 3) ? 4 : 0;
  if (b0 >= 0xF1 && b0 <= 0xF3)
    return cont(pos + 1) && cont(pos + 2) && cont(pos + 3) ? 4 : 0;
  if (b0 == 0xF4) return cont(pos + 1, 0x80, 0x8F) && cont(pos + 2) && cont(pos + 3) ? 4 : 0;
  return 0;
}

class Lexer {
 public:
  Lexer(std::string_view text, std::vector<Diagnostic>& diagnostics)
      : text_(text), diagnostics_(diagnostics) {}

  bool done() const { return pos_ >= text_.size(); }

  // Tokens of the next physical line. Stops lexing a line at its first
  // lexical error; the rest of that line is skipped.
  Line next_line() {
    Line line;
    while (pos_ < text_.size()) {
      unsigned char c = static_cast<unsigned char>(text_[pos_]);
      if (c == '\n') {
        line.end = span(pos_, 0);
        advance_newline();
        return line;
      }
      if (line.lex_error) {
        ++pos_;
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (ident_start(c)) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        line.tokens.push_back(
            {Tok::Ident, span(start, pos_ - start), std::string(text_.substr(start, pos_ - start))});
      } else if (c == '"') {
        if (!lex_string(line)) line.lex_error = true;
      } else if (c == '-' && peek(1) == '>') {
        line.tokens.push_back({Tok::Arrow, span(pos_, 2), {}});
        pos_ += 2;
      } else if (c == '<' && peek(1) == '-' && peek(2) == '>') {
        line.tokens.push_back({Tok::BiArrow, span(pos_, 3), {}});
        pos_ += 3;
      } else if (c == '{' || c == '}' || c == '=') {
        Tok t = c == '{' ? Tok::LBrace : c == '}' ? Tok::RBrace : Tok::Equals;
        line.tokens.push_back({t, span(pos_, 1), {}});
        ++pos_;
      } else {
        std::size_t len = utf8_sequence(text_, pos_);
        if (len == 0) len = 1;
        error(span(pos_, len), describe_char(pos_, len));
        line.lex_error = true;
        pos_ += len;
      }
    }
    line.end = span(text_.size(), 0);
    return line;
  }

 private:
  char peek(std::size_t ahead) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance_newline() {
    ++pos_;
    ++line_no_;
    line_start_ = pos_;
  }

  SourceSpan span(std::size_t offset, std::size_t length) const {
    return SourceSpan{line_no_, offset - line_start_ + 1, offset, length};
  }

  void error(SourceSpan where, std::string message) {
    auto d = make_diagnostic(Code::P001, std::move(message));
    d.span = where;
    diagnostics_.push_back(std::move(d));
  }

  std::string describe_char(std::size_t offset, std::size_t len) const {
    unsigned char c = static_cast<unsigned char>(text_[offset]);
    if (c >= 0x21 && c < 0x7F) return std::string("illegal character '") + static_cast<char>(c) + "'";
    if (len > 1) return "illegal character '" + std::string(text_.substr(offset, len)) + "'";
    static const char* hex = "0123456789ABCDEF";
    return std::string("illegal byte 0x") + hex[c >> 4] + hex[c & 0xF];
  }

  bool lex_string(Line& line) {
    std::size_t start = pos_;
    ++pos_;
    std::string value;
    while (true) {
      if (pos_ >= text_.size() || text_[pos_] == '\n') {
        error(span(start, pos_ - start), "unterminated string");
        return false;
      }
      unsigned char c = static_cast<unsigned char>(text_[pos_]);
      if (c == '"') {
        ++pos_;
        line.tokens.push_back({Tok::String, span(start, pos_ - start), std::move(value)});
        return true;
      }
      if (c == '\\') {
        char next = peek(1);
        if (next == '"' || next == '\\') {
          value.push_back(next);
          pos_ += 2;
          continue;
        }
        error(span(pos_, next == '\0' || next == '\n' ? 1 : 2), "invalid escape in string");
        skip_string_rest();
        return false;
      }
      if ((c < 0x20 && c != '\t') || c == 0x7F) {
        error(span(pos_, 1), "control character in string");
        skip_string_rest();
        return false;
      }
      std::size_t len = utf8_sequence(text_, pos_);
      if (len == 0) {
        error(span(pos_, 1), "invalid UTF-8 in string");
        skip_string_rest();
        return false;
      }
      value.append(text_.substr(pos_, len));
      pos_ += len;
    }
  }

  void skip_string_rest() {
    while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
  }

  std::string_view text_;
  std::vector<Diagnostic>& diagnostics_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 1;
  std::size_t line_start_ = 0;
};

SourceSpan cover(const SourceSpan& a, const SourceSpan& b) {
  return SourceSpan{a.line, a.column, a.offset, b.offset + b.length - a.offset};
}

std::string_view describe(const Token& t) {
  switch (t.kind) {
    case Tok::Ident: return "identifier";
    case Tok::String: return "string";
    case Tok::Arrow: return "'->'";
    case Tok::BiArrow: return "'<->'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Equals: return "'='";
  }
  return "token";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text, diagnostics_) {}

  ParseResult run() {
    ParseResult result;
    bool header_seen = false;

    while (!lexer_.done()) {
      Line line = lexer_.next_line();
      if (line.tokens.empty()) continue;
      const Token& head = line.tokens.front();

      if (head.kind == Tok::Ident && head.text == "model") {
        if (header_seen) {
          syntax_error(head.span, "duplicate model header");
        } else {
          header_seen = true;
          if (!line.lex_error) parse_header(line, result);
        }
        continue;
      }
      if (!header_seen) {
        header_seen = true;
        auto d = make_diagnostic(Code::P003, "missing 'model \"name\"' header");
        d.span = head.span;
        diagnostics_.push_back(std::move(d));
      }
      if (line.lex_error) continue;
      parse_declaration(line, result.spans);
    }

    if (!header_seen) {
      auto d = make_diagnostic(Code::P003, "missing 'model \"name\"' header");
      d.span = SourceSpan{1, 1, 0, 0};
      diagnostics_.push_back(std::move(d));
    }

    if (!diagnostics_.empty()) {
      result.diagnostics = std::move(diagnostics_);
      return result;
    }

    BuildResult built = build_model(std::move(name_), std::move(elements_), std::move(relations_));
    if (!built.ok()) {
      result.diagnostics = std::move(built.errors);
      attach_spans(result.diagnostics, result.spans);
      return result;
    }
    result.model = std::move(built.model);
    return result;
  }

 private:
  void syntax_error(const SourceSpan& where, std::string message) {
    auto d = make_diagnostic(Code::P002, std::move(message));
    d.span = where;
    diagnostics_.push_back(std::move(d));
  }

  // Cursor over one line's tokens.
  struct Cursor {
    const Line& line;
    std::size_t i = 0;

    const Token* peek() const { return i < line.tokens.size() ? &line.tokens[i] : nullptr; }
    bool at(Tok kind) const { return peek() && peek()->kind == kind; }
    SourceSpan here() const { return peek() ? peek()->span : line.end; }
  };

  const Token* expect(Cursor& c, Tok kind, std::string_view what) {
    if (c.at(kind)) return &c.line.tokens[c.i++];
    if (const Token* t = c.peek()) {
      syntax_error(t->span, "expected " + std::string(what) + ", found " + std::string(describe(*t)));
    } else {
      syntax_error(c.line.end, "expected " + std::string(what) + " before end of line");
    }
    return nullptr;
  }

  bool expect_end(Cursor& c) {
    if (const Token* t = c.peek()) {
      syntax_error(t->span, "unexpected " + std::string(describe(*t)) + " at end of declaration");
      return false;
    }
    return true;
  }

  void parse_header(const Line& line, ParseResult& result) {
    Cursor c{line, 1};
    const Token* name = expect(c, Tok::String, "model name string");
    if (!name || !expect_end(c)) return;
    name_ = name->text;
    result.spans.header = cover(line.tokens.front().span, name->span);
  }

  bool parse_attributes(Cursor& c, Attributes& out) {
    if (!c.at(Tok::LBrace)) return true;
    ++c.i;
    while (!c.at(Tok::RBrace)) {
      const Token* key = expect(c, Tok::Ident, "attribute key or '}'");
      if (!key) return false;
      for (const auto& [k, v] : out) {
        if (k == key->text) {
          syntax_error(key->span, "duplicate attribute key '" + key->text + "'");
          return false;
        }
      }
      if (!expect(c, Tok::Equals, "'='")) return false;
      const Token* value = expect(c, Tok::String, "attribute value string");
      if (!value) return false;
      out.emplace_back(key->text, value->text);
    }
    ++c.i;
    return true;
  }

  void parse_declaration(const Line& line, SpanTable& spans) {
    Cursor c{line, 0};
    const Token& head = line.tokens.front();
    if (head.kind != Tok::Ident) {
      syntax_error(head.span, "expected declaration keyword, found " + std::string(describe(head)));
      return;
    }
    ++c.i;
    const SourceSpan whole = cover(head.span, line.tokens.back().span);

    if (auto kind = kind_from_keyword(head.text)) {
      const Token* id = expect(c, Tok::Ident, "identifier");
      if (!id) return;
      ElementDecl decl{id->text, *kind, std::nullopt, {}};
      if (c.at(Tok::String)) decl.label = line.tokens[c.i++].text;
      if (!parse_attributes(c, decl.attributes) || !expect_end(c)) return;
      elements_.push_back(std::move(decl));
      spans.elements.push_back({whole, id->span, {}});
      return;
    }

    RelationKind rel;
    if (head.text == "assign") {
      rel = RelationKind::Assignment;
    } else if (head.text == "comm") {
      rel = RelationKind::Communication;
    } else if (head.text == "flow") {
      rel = RelationKind::ProductFlow;
    } else {
      syntax_error(head.span, "unknown declaration keyword '" + head.text + "'");
      return;
    }
    const Token* from = expect(c, Tok::Ident, "identifier");
    if (!from) return;
    bool bidirectional = false;
    if (rel == RelationKind::Communication && c.at(Tok::BiArrow)) {
      bidirectional = true;
      ++c.i;
    } else if (!expect(c, Tok::Arrow, rel == RelationKind::Communication ? "'->' or '<->'" : "'->'")) {
      return;
    }
    const Token* to = expect(c, Tok::Ident, "identifier");
    if (!to) return;
    RelationDecl decl{rel, from->text, to->text, bidirectional, {}};
    if (!parse_attributes(c, decl.attributes) || !expect_end(c)) return;
    relations_.push_back(std::move(decl));
    spans.relations.push_back({whole, from->span, to->span});
  }

  std::vector<Diagnostic> diagnostics_;
  Lexer lexer_;
  std::string name_;
  std::vector<ElementDecl> elements_;
  std::vector<RelationDecl> relations_;
};

}  // namespace

std::optional<SourceSpan> SpanTable::lookup(const DeclRef& ref) const {
  const std::vector<DeclSpans>* table = nullptr;
  switch (ref.kind) {
    case DeclRef::Kind::Header:
      return header;
    case DeclRef::Kind::Element:
      table = &elements;
      break;
    case DeclRef::Kind::Relation:
      table = &relations;
      break;
  }
  if (ref.index >= table->size()) return std::nullopt;
  const DeclSpans& s = (*table)[ref.index];
  switch (ref.part) {
    case DeclRef::Part::Id:
    case DeclRef::Part::From:
      return s.first;
    case DeclRef::Part::To:
      return s.second;
    case DeclRef::Part::Whole:
      break;
  }
  return s.whole;
}

ParseResult parse(std::string_view text) { return Parser(text).run(); }

void attach_spans(std::vector<Diagnostic>& diagnostics, const SpanTable& spans) {
  for (auto& d : diagnostics) {
    if (d.origin && !d.span) d.span = spans.lookup(*d.origin);
  }
}

bool is_identifier(std::string_view text) {
  if (text.empty() || !ident_start(static_cast<unsigned char>(text.front()))) return false;
  for (char c : text) {
    if (!ident_char(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string quote(std::string_view text) {
  std::string out;
  out.reserve(text.size() + 2);
  out.push_back('"');
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

namespace {

void append_attributes(std::string& out, const Attributes& attributes) {
  if (attributes.empty()) return;
  out += " {";
  bool first = true;
  for (const auto& [key, value] : attributes) {
    if (!first) out.push_back(' ');
    first = false;
    out += key;
    out += " = ";
    out += quote(value);
  }
  out.push_back('}');
}

std::string_view relation_keyword(RelationKind kind) {
  switch (kind) {
    case RelationKind::Communication: return "comm";
    case RelationKind::Assignment: return "assign";
    case RelationKind::ProductFlow: return "flow";
  }
  return "comm";
}

}  // namespace

std::string format(const Model& model) {
  std::string out = "model " + quote(model.name()) + "\n";
  for (const Element& e : model.elements()) {
    out += keyword(e.kind);
    out.push_back(' ');
    out += e.id;
    if (e.label) {
      out.push_back(' ');
      out += quote(*e.label);
    }
    append_attributes(out, e.attributes);
    out.push_back('\n');
  }
  for (const Relation& r : model.relations()) {
    out += relation_keyword(r.kind);
    out.push_back(' ');
    out += r.from;
    out += r.bidirectional ? " <-> " : " -> ";
    out += r.to;
    append_attributes(out, r.attributes);
    out.push_back('\n');
  }
  return out;
}

}  // namespace gml::dsl
