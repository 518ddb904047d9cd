#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gml/diagnostic.hpp"

namespace gml {

/// Every element kind of the language. Products, six technical resource
/// kinds and seven system function kinds; the set is closed.
enum class ElementKind : std::uint8_t {
  Product,
  // technical resources
  Sensor,
  Actuator,
  Controller,
  EdgeDevice,
  LocalComputer,
  CloudSystem,
  // system functions
  Automate,
  Transform,
  Record,
  Store,
  Process,
  Train,
  Inference,
};

inline constexpr ElementKind kAllElementKinds[] = {
    ElementKind::Product,       ElementKind::Sensor,
    ElementKind::Actuator,      ElementKind::Controller,
    ElementKind::EdgeDevice,    ElementKind::LocalComputer,
    ElementKind::CloudSystem,   ElementKind::Automate,
    ElementKind::Transform,     ElementKind::Record,
    ElementKind::Store,         ElementKind::Process,
    ElementKind::Train,         ElementKind::Inference,
};

enum class Category : std::uint8_t { Product, Resource, Function };

constexpr Category category(ElementKind kind) {
  switch (kind) {
    case ElementKind::Product:
      return Category::Product;
    case ElementKind::Sensor:
    case ElementKind::Actuator:
    case ElementKind::Controller:
    case ElementKind::EdgeDevice:
    case ElementKind::LocalComputer:
    case ElementKind::CloudSystem:
      return Category::Resource;
    default:
      return Category::Function;
  }
}

constexpr bool is_product(ElementKind k) { return category(k) == Category::Product; }
constexpr bool is_resource(ElementKind k) { return category(k) == Category::Resource; }
constexpr bool is_function(ElementKind k) { return category(k) == Category::Function; }

/// DSL keyword for a kind ("sensor", "edge", "inference", ...). The same
/// spelling is used by the interchange format.
std::string_view keyword(ElementKind kind);
std::optional<ElementKind> kind_from_keyword(std::string_view word);
/// Human name, e.g. "edge device".
std::string_view display_name(ElementKind kind);

enum class RelationKind : std::uint8_t { Communication, Assignment, ProductFlow };

std::string_view to_string(RelationKind kind);

/// Small bit set over RelationKind for adjacency queries.
class RelationKindSet {
 public:
  constexpr RelationKindSet() = default;
  constexpr RelationKindSet(std::initializer_list<RelationKind> kinds) {
    for (auto k : kinds) bits_ |= bit(k);
  }
  static constexpr RelationKindSet all() {
    return {RelationKind::Communication, RelationKind::Assignment,
            RelationKind::ProductFlow};
  }
  constexpr bool contains(RelationKind k) const { return (bits_ & bit(k)) != 0; }

 private:
  static constexpr std::uint8_t bit(RelationKind k) {
    return static_cast<std::uint8_t>(1U << static_cast<unsigned>(k));
  }
  std::uint8_t bits_ = 0;
};

/// Opaque key/value pairs carried through parse, format and interchange in
/// declaration order. Never interpreted.
using Attributes = std::vector<std::pair<std::string, std::string>>;

struct Element {
  std::string id;
  ElementKind kind = ElementKind::Product;
  std::optional<std::string> label;
  Attributes attributes;
  std::size_t decl_index = 0;

  friend bool operator==(const Element&, const Element&) = default;
};

/// For Assignment, `from` is the function and `to` the resource.
/// `bidirectional` is only meaningful for Communication.
struct Relation {
  RelationKind kind = RelationKind::Communication;
  std::string from;
  std::string to;
  bool bidirectional = false;
  Attributes attributes;
  std::size_t decl_index = 0;

  const std::string& function() const { return from; }
  const std::string& resource() const { return to; }

  friend bool operator==(const Relation&, const Relation&) = default;
};

/// Short display form used as a diagnostic subject, e.g. "A->B", "A<->B".
std::string relation_subject(const Relation& relation);

/// Automation pyramid level, 1 (process, bottom) to 4 (computer/cloud, top).
enum class Level : std::uint8_t {
  TechnicalProcess = 1,
  FieldDevice = 2,
  ControlAndMonitoring = 3,
  ComputerAndCloud = 4,
};

inline constexpr Level kAllLevels[] = {Level::TechnicalProcess, Level::FieldDevice,
                                       Level::ControlAndMonitoring,
                                       Level::ComputerAndCloud};

constexpr int to_int(Level level) { return static_cast<int>(level); }
std::string_view level_name(Level level);

/// std::nullopt stands for "undetermined".
using LevelResult = std::optional<Level>;

struct ElementDecl {
  std::string id;
  ElementKind kind = ElementKind::Product;
  std::optional<std::string> label;
  Attributes attributes;
};

struct RelationDecl {
  RelationKind kind = RelationKind::Communication;
  std::string from;
  std::string to;
  bool bidirectional = false;
  Attributes attributes;
};

class LookupError : public std::out_of_range {
 public:
  explicit LookupError(const std::string& id)
      : std::out_of_range("unknown element id '" + id + "'"), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

struct BuildResult;

/// Validated, immutable element graph. Only build_model creates one, so
/// every stored relation satisfies its endpoint typing.
class Model {
 public:
  const std::string& name() const { return name_; }
  const std::vector<Element>& elements() const { return elements_; }
  const std::vector<Relation>& relations() const { return relations_; }

  const Element* find(std::string_view id) const;
  /// Throws LookupError.
  const Element& at(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }

  /// Assignment relations whose function is `function_id`, by decl_index.
  const std::vector<std::size_t>& assignments_of(std::string_view function_id) const;
  /// Relation indexes incident to the element, by decl_index.
  const std::vector<std::size_t>& incident(std::string_view id) const;

  friend bool operator==(const Model& a, const Model& b) {
    return a.name_ == b.name_ && a.elements_ == b.elements_ &&
           a.relations_ == b.relations_;
  }

 private:
  friend BuildResult build_model(std::string name, std::vector<ElementDecl> elements,
                                 std::vector<RelationDecl> relations);
  Model() = default;

  std::size_t index_of(std::string_view id) const;

  std::string name_;
  std::vector<Element> elements_;
  std::vector<Relation> relations_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
  // parallel to elements_
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<std::vector<std::size_t>> assignments_;
};

struct BuildResult {
  std::optional<Model> model;
  std::vector<Diagnostic> errors;

  bool ok() const { return model.has_value(); }
};

/// Builds the indexes and rejects structural violations with E001, E002,
/// E003, E005, E006 and E007. Declaration order is preserved.
BuildResult build_model(std::string name, std::vector<ElementDecl> elements,
                        std::vector<RelationDecl> relations);

/// Level of an element on the automation pyramid. Non-transform functions
/// inherit the level of their host when they have exactly one assignment.
LevelResult derive_level(const Element& element, const Model& model);

struct Neighbor {
  const Relation* relation = nullptr;
  std::string other;

  friend bool operator==(const Neighbor& a, const Neighbor& b) {
    return a.relation == b.relation && a.other == b.other;
  }
};

/// Relations of the requested kinds incident to `id`, with the opposite
/// endpoint, ordered by relation decl_index. Throws LookupError.
std::vector<Neighbor> neighbors(const Model& model, std::string_view id,
                                RelationKindSet kinds = RelationKindSet::all());

/// Canonical key of a relation: kind, endpoints and direction. Bidirectional
/// communications are keyed on the unordered endpoint pair.
struct RelationKey {
  RelationKind kind;
  std::string a;
  std::string b;
  bool bidirectional;

  auto operator<=>(const RelationKey&) const = default;
};

RelationKey relation_key(const Relation& relation);

}  // namespace gml
