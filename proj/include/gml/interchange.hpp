#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gml/diagnostic.hpp"
#include "gml/model.hpp"

namespace gml::interchange {

inline constexpr std::string_view kFormatVersion = "gml-ai/1";

/// Document layout (keys in this order, lists in declaration order):
///
///   { "version": "gml-ai/1", "name": "...",
///     "elements":  [ {"id", "kind", "label"?, "attributes"?} ],
///     "relations": [ {"type", "from", "to", "bidirectional"?, "attributes"?} ] }
///
/// `bidirectional` is written for communications only. Two-space indented,
/// LF terminated.
std::string export_json(const Model& model);

struct ImportResult {
  std::optional<Model> model;
  /// J001/J002, or the build E-codes.
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return model.has_value(); }
};

/// Never throws on malformed input. Unknown keys are ignored.
ImportResult import_json(std::string_view text);

}  // namespace gml::interchange
