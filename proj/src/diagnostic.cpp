#include "gml/diagnostic.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace gml {

std::string_view to_string(Code code) {
  switch (code) {
    case Code::P001: return "P001";
    case Code::P002: return "P002";
    case Code::P003: return "P003";
    case Code::E001: return "E001";
    case Code::E002: return "E002";
    case Code::E003: return "E003";
    case Code::E004: return "E004";
    case Code::E005: return "E005";
    case Code::E006: return "E006";
    case Code::E007: return "E007";
    case Code::W001: return "W001";
    case Code::W002: return "W002";
    case Code::W003: return "W003";
    case Code::W004: return "W004";
    case Code::W005: return "W005";
    case Code::W006: return "W006";
    case Code::I001: return "I001";
    case Code::J001: return "J001";
    case Code::J002: return "J002";
  }
  return "????";
}

std::string_view to_string(Severity severity) {
  switch (severity) {
    case Severity::Info: return "info";
    case Severity::Warning: return "warning";
    case Severity::Error: return "error";
  }
  return "error";
}

std::optional<Code> parse_code(std::string_view text) {
  for (Code c : kAllCodes) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

Severity default_severity(Code code) {
  switch (to_string(code).front()) {
    case 'W': return Severity::Warning;
    case 'I': return Severity::Info;
    default: return Severity::Error;
  }
}

Diagnostic make_diagnostic(Code code, std::string message,
                           std::vector<std::string> subjects,
                           std::optional<DeclRef> origin) {
  Diagnostic d;
  d.code = code;
  d.severity = default_severity(code);
  d.message = std::move(message);
  d.subjects = std::move(subjects);
  d.origin = origin;
  return d;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

namespace {

std::string_view color_of(Severity s) {
  switch (s) {
    case Severity::Error: return "\x1b[31m";
    case Severity::Warning: return "\x1b[33m";
    case Severity::Info: return "\x1b[36m";
  }
  return "";
}

}  // namespace

std::string format_text(const std::vector<Diagnostic>& diagnostics, bool color) {
  std::ostringstream out;
  for (const auto& d : diagnostics) {
    out << to_string(d.code) << ' ';
    if (color) out << color_of(d.severity);
    out << to_string(d.severity);
    if (color) out << "\x1b[0m";
    out << ' ';
    if (d.subjects.empty()) {
      out << '-';
    } else {
      for (std::size_t i = 0; i < d.subjects.size(); ++i) {
        if (i) out << ',';
        out << d.subjects[i];
      }
    }
    out << ": " << d.message;
    if (d.span) out << " (" << d.span->line << ':' << d.span->column << ')';
    out << '\n';
  }
  return out.str();
}

std::string format_json(const std::vector<Diagnostic>& diagnostics) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& d : diagnostics) {
    nlohmann::ordered_json rec;
    rec["code"] = to_string(d.code);
    rec["severity"] = to_string(d.severity);
    rec["subjects"] = d.subjects;
    rec["message"] = d.message;
    if (d.span) {
      rec["span"] = {{"line", d.span->line},
                     {"column", d.span->column},
                     {"offset", d.span->offset},
                     {"length", d.span->length}};
    } else {
      rec["span"] = nullptr;
    }
    arr.push_back(std::move(rec));
  }
  return arr.dump(2, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
}

}  // namespace gml
