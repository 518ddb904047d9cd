#include "gml/interchange.hpp"

#include <json.hpp>

#include "gml/dsl.hpp"

namespace gml::interchange {

using nlohmann::ordered_json;

namespace {

ordered_json attributes_json(const Attributes& attributes) {
  ordered_json obj = ordered_json::object();
  for (const auto& [key, value] : attributes) obj[key] = value;
  return obj;
}

std::optional<RelationKind> relation_kind(std::string_view type) {
  for (RelationKind k : {RelationKind::Communication, RelationKind::Assignment,
                         RelationKind::ProductFlow}) {
    if (to_string(k) == type) return k;
  }
  return std::nullopt;
}

struct Malformed {
  std::string message;
};

// Text that the DSL can carry inside a string literal.
bool printable(std::string_view s) {
  for (unsigned char c : s) {
    if ((c < 0x20 && c != '\t') || c == 0x7F) return false;
  }
  return true;
}

std::string require_string(const ordered_json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw Malformed{where + ": missing or non-string \"" + key + "\""};
  }
  auto value = it->get<std::string>();
  if (!printable(value)) throw Malformed{where + ": \"" + key + "\" contains control characters"};
  return value;
}

std::string require_identifier(const ordered_json& obj, const char* key, const std::string& where) {
  auto value = require_string(obj, key, where);
  if (!dsl::is_identifier(value)) {
    throw Malformed{where + ": \"" + key + "\" is not a valid identifier"};
  }
  return value;
}

Attributes read_attributes(const ordered_json& obj, const std::string& where) {
  Attributes out;
  auto it = obj.find("attributes");
  if (it == obj.end()) return out;
  if (!it->is_object()) throw Malformed{where + ": \"attributes\" must be an object"};
  for (const auto& [key, value] : it->items()) {
    if (!dsl::is_identifier(key)) {
      throw Malformed{where + ": attribute key '" + key + "' is not a valid identifier"};
    }
    if (!value.is_string() || !printable(value.get<std::string>())) {
      throw Malformed{where + ": attribute '" + key + "' must be a single-line string"};
    }
    out.emplace_back(key, value.get<std::string>());
  }
  return out;
}

Diagnostic malformed(std::string message) {
  return make_diagnostic(Code::J001, "malformed interchange document: " + std::move(message));
}

}  // namespace

std::string export_json(const Model& model) {
  ordered_json doc;
  doc["version"] = kFormatVersion;
  doc["name"] = model.name();
  doc["elements"] = ordered_json::array();
  for (const Element& e : model.elements()) {
    ordered_json rec;
    rec["id"] = e.id;
    rec["kind"] = keyword(e.kind);
    if (e.label) rec["label"] = *e.label;
    if (!e.attributes.empty()) rec["attributes"] = attributes_json(e.attributes);
    doc["elements"].push_back(std::move(rec));
  }
  doc["relations"] = ordered_json::array();
  for (const Relation& r : model.relations()) {
    ordered_json rec;
    rec["type"] = to_string(r.kind);
    rec["from"] = r.from;
    rec["to"] = r.to;
    if (r.kind == RelationKind::Communication) rec["bidirectional"] = r.bidirectional;
    if (!r.attributes.empty()) rec["attributes"] = attributes_json(r.attributes);
    doc["relations"].push_back(std::move(rec));
  }
  return doc.dump(2, ' ', false, ordered_json::error_handler_t::replace) + "\n";
}

ImportResult import_json(std::string_view text) {
  ImportResult result;
  ordered_json doc = ordered_json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    result.diagnostics.push_back(malformed("not valid JSON"));
    return result;
  }
  if (!doc.is_object()) {
    result.diagnostics.push_back(malformed("top level must be an object"));
    return result;
  }
  auto version = doc.find("version");
  if (version == doc.end() || !version->is_string()) {
    result.diagnostics.push_back(malformed("missing \"version\""));
    return result;
  }
  if (version->get<std::string>() != kFormatVersion) {
    result.diagnostics.push_back(make_diagnostic(
        Code::J002, "unsupported interchange version '" + version->get<std::string>() +
                        "' (expected '" + std::string(kFormatVersion) + "')"));
    return result;
  }

  std::string name;
  std::vector<ElementDecl> elements;
  std::vector<RelationDecl> relations;
  try {
    name = require_string(doc, "name", "document");
    for (const char* key : {"elements", "relations"}) {
      auto it = doc.find(key);
      if (it == doc.end() || !it->is_array()) {
        throw Malformed{std::string("\"") + key + "\" must be an array"};
      }
    }
    std::size_t index = 0;
    for (const auto& rec : doc["elements"]) {
      std::string where = "elements[" + std::to_string(index++) + "]";
      if (!rec.is_object()) throw Malformed{where + " must be an object"};
      ElementDecl decl;
      decl.id = require_identifier(rec, "id", where);
      auto kind = kind_from_keyword(require_string(rec, "kind", where));
      if (!kind) throw Malformed{where + ": unknown element kind"};
      decl.kind = *kind;
      if (rec.contains("label")) decl.label = require_string(rec, "label", where);
      decl.attributes = read_attributes(rec, where);
      elements.push_back(std::move(decl));
    }
    index = 0;
    for (const auto& rec : doc["relations"]) {
      std::string where = "relations[" + std::to_string(index++) + "]";
      if (!rec.is_object()) throw Malformed{where + " must be an object"};
      RelationDecl decl;
      auto kind = relation_kind(require_string(rec, "type", where));
      if (!kind) throw Malformed{where + ": unknown relation type"};
      decl.kind = *kind;
      decl.from = require_identifier(rec, "from", where);
      decl.to = require_identifier(rec, "to", where);
      if (auto it = rec.find("bidirectional"); it != rec.end()) {
        if (!it->is_boolean()) throw Malformed{where + ": \"bidirectional\" must be a boolean"};
        decl.bidirectional = it->get<bool>();
        if (decl.bidirectional && decl.kind != RelationKind::Communication) {
          throw Malformed{where + ": only communications can be bidirectional"};
        }
      }
      decl.attributes = read_attributes(rec, where);
      relations.push_back(std::move(decl));
    }
  } catch (const Malformed& m) {
    result.diagnostics.push_back(malformed(m.message));
    return result;
  }

  BuildResult built = build_model(std::move(name), std::move(elements), std::move(relations));
  result.model = std::move(built.model);
  result.diagnostics = std::move(built.errors);
  return result;
}

}  // namespace gml::interchange
