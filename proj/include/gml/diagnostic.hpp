#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gml {

/// Position of a token or declaration in a source document. Lines and
/// columns are 1-based; columns count bytes.
struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t offset = 0;
  std::size_t length = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class Severity : std::uint8_t { Info, Warning, Error };

/// Closed catalog of diagnostic codes. P = parse, E = structural/semantic
/// error, W = warning, I = info, J = interchange import.
enum class Code : std::uint8_t {
  P001,
  P002,
  P003,
  E001,
  E002,
  E003,
  E004,
  E005,
  E006,
  E007,
  W001,
  W002,
  W003,
  W004,
  W005,
  W006,
  I001,
  J001,
  J002,
};

inline constexpr Code kAllCodes[] = {
    Code::P001, Code::P002, Code::P003, Code::E001, Code::E002,
    Code::E003, Code::E004, Code::E005, Code::E006, Code::E007,
    Code::W001, Code::W002, Code::W003, Code::W004, Code::W005,
    Code::W006, Code::I001, Code::J001, Code::J002,
};

std::string_view to_string(Code code);
std::string_view to_string(Severity severity);
std::optional<Code> parse_code(std::string_view text);

/// Severity a code carries unless a configuration raises it.
Severity default_severity(Code code);

/// Which declaration a diagnostic came from; used to attach source spans
/// and to order reports.
struct DeclRef {
  enum class Kind : std::uint8_t { Header, Element, Relation };
  enum class Part : std::uint8_t { Whole, Id, From, To };

  Kind kind = Kind::Element;
  std::size_t index = 0;
  Part part = Part::Whole;

  friend bool operator==(const DeclRef&, const DeclRef&) = default;
};

struct Diagnostic {
  Code code = Code::P001;
  Severity severity = Severity::Error;
  std::string message;
  std::vector<std::string> subjects;
  std::optional<DeclRef> origin;
  std::optional<SourceSpan> span;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

Diagnostic make_diagnostic(Code code, std::string message,
                           std::vector<std::string> subjects = {},
                           std::optional<DeclRef> origin = std::nullopt);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

/// `CODE severity subject: message (line:col)`, one line per diagnostic.
std::string format_text(const std::vector<Diagnostic>& diagnostics,
                        bool color = false);

/// JSON array of {code, severity, subjects, message, span}.
std::string format_json(const std::vector<Diagnostic>& diagnostics);

}  // namespace gml
