#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gml/diagnostic.hpp"
#include "gml/model.hpp"

namespace gml::dsl {

/// Where each declaration sits in the source. Indexes are parallel to the
/// declaration lists handed to build_model.
struct DeclSpans {
  SourceSpan whole;
  SourceSpan first;   // element id, or relation source
  SourceSpan second;  // relation target; unused for elements
};

struct SpanTable {
  SourceSpan header;
  std::vector<DeclSpans> elements;
  std::vector<DeclSpans> relations;

  std::optional<SourceSpan> lookup(const DeclRef& ref) const;
};

struct ParseResult {
  std::optional<Model> model;
  SpanTable spans;
  /// P-codes, or build E-codes with spans attached. Empty iff model is set.
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return model.has_value(); }
};

/// Parses a `.gml` document. Total: never throws on malformed input, and
/// keeps going after a bad line so one pass reports every problem.
ParseResult parse(std::string_view text);

/// Fills in `span` for every diagnostic that has an origin in the table.
void attach_spans(std::vector<Diagnostic>& diagnostics, const SpanTable& spans);

/// Canonical text: header, then elements, then relations, one per line in
/// declaration order, LF line endings.
std::string format(const Model& model);

/// Quotes and escapes a string literal the way `format` does.
std::string quote(std::string_view text);

bool is_identifier(std::string_view text);

}  // namespace gml::dsl
