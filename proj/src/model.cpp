#include "gml/model.hpp"

#include <algorithm>

namespace gml {

std::string_view keyword(ElementKind kind) {
  switch (kind) {
    case ElementKind::Product: return "product";
    case ElementKind::Sensor: return "sensor";
    case ElementKind::Actuator: return "actuator";
    case ElementKind::Controller: return "controller";
    case ElementKind::EdgeDevice: return "edge";
    case ElementKind::LocalComputer: return "local";
    case ElementKind::CloudSystem: return "cloud";
    case ElementKind::Automate: return "automate";
    case ElementKind::Transform: return "transform";
    case ElementKind::Record: return "record";
    case ElementKind::Store: return "store";
    case ElementKind::Process: return "process";
    case ElementKind::Train: return "train";
    case ElementKind::Inference: return "inference";
  }
  return "product";
}

std::optional<ElementKind> kind_from_keyword(std::string_view word) {
  for (ElementKind k : kAllElementKinds) {
    if (keyword(k) == word) return k;
  }
  return std::nullopt;
}

std::string_view display_name(ElementKind kind) {
  switch (kind) {
    case ElementKind::EdgeDevice: return "edge device";
    case ElementKind::LocalComputer: return "local computer system";
    case ElementKind::CloudSystem: return "cloud system";
    default: return keyword(kind);
  }
}

std::string_view to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::Communication: return "communication";
    case RelationKind::Assignment: return "assignment";
    case RelationKind::ProductFlow: return "product_flow";
  }
  return "communication";
}

std::string relation_subject(const Relation& relation) {
  const char* arrow = relation.bidirectional ? "<->" : "->";
  return relation.from + arrow + relation.to;
}

std::string_view level_name(Level level) {
  switch (level) {
    case Level::TechnicalProcess: return "Technical Process Level";
    case Level::FieldDevice: return "Field Device Level";
    case Level::ControlAndMonitoring: return "Control and Monitoring Level";
    case Level::ComputerAndCloud: return "Computer and Cloud Level";
  }
  return "";
}

const Element* Model::find(std::string_view id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &elements_[it->second];
}

const Element& Model::at(std::string_view id) const {
  return elements_[index_of(id)];
}

std::size_t Model::index_of(std::string_view id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) throw LookupError(std::string(id));
  return it->second;
}

const std::vector<std::size_t>& Model::assignments_of(std::string_view function_id) const {
  return assignments_[index_of(function_id)];
}

const std::vector<std::size_t>& Model::incident(std::string_view id) const {
  return incident_[index_of(id)];
}

namespace {

using Part = DeclRef::Part;

DeclRef relation_ref(std::size_t index, Part part = Part::Whole) {
  return {DeclRef::Kind::Relation, index, part};
}

std::string_view relation_word(RelationKind kind) {
  switch (kind) {
    case RelationKind::Communication: return "communication";
    case RelationKind::Assignment: return "assignment";
    case RelationKind::ProductFlow: return "product flow";
  }
  return "relation";
}

}  // namespace

BuildResult build_model(std::string name, std::vector<ElementDecl> elements,
                        std::vector<RelationDecl> relations) {
  BuildResult result;
  Model model;
  model.name_ = std::move(name);

  model.elements_.reserve(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    auto& decl = elements[i];
    if (model.by_id_.contains(decl.id)) {
      result.errors.push_back(make_diagnostic(
          Code::E001, "duplicate identifier '" + decl.id + "'", {decl.id},
          DeclRef{DeclRef::Kind::Element, i, Part::Id}));
      continue;
    }
    model.by_id_.emplace(decl.id, model.elements_.size());
    model.elements_.push_back(Element{std::move(decl.id), decl.kind, std::move(decl.label),
                                      std::move(decl.attributes), model.elements_.size()});
  }

  for (std::size_t i = 0; i < relations.size(); ++i) {
    auto& decl = relations[i];
    const Element* from = model.find(decl.from);
    const Element* to = model.find(decl.to);
    if (!from) {
      result.errors.push_back(make_diagnostic(
          Code::E002, "unknown identifier '" + decl.from + "' in relation", {decl.from},
          relation_ref(i, Part::From)));
    }
    if (!to) {
      result.errors.push_back(make_diagnostic(
          Code::E002, "unknown identifier '" + decl.to + "' in relation", {decl.to},
          relation_ref(i, Part::To)));
    }
    if (!from || !to) continue;

    std::vector<std::string> subjects{decl.from, decl.to};
    bool typed = true;
    switch (decl.kind) {
      case RelationKind::Assignment:
        if (!is_function(from->kind) || !is_resource(to->kind)) {
          typed = false;
          result.errors.push_back(make_diagnostic(
              Code::E003,
              "assignment must connect a system function to a technical resource, got " +
                  std::string(display_name(from->kind)) + " -> " +
                  std::string(display_name(to->kind)),
              subjects, relation_ref(i)));
        }
        break;
      case RelationKind::Communication:
        for (const Element* end : {from, to}) {
          if (!is_resource(end->kind)) {
            typed = false;
            result.errors.push_back(make_diagnostic(
                Code::E005,
                "communication endpoint '" + end->id + "' is a " +
                    std::string(display_name(end->kind)) + ", not a technical resource",
                subjects, relation_ref(i, end == from ? Part::From : Part::To)));
          }
        }
        break;
      case RelationKind::ProductFlow: {
        bool product_then_transform =
            is_product(from->kind) && to->kind == ElementKind::Transform;
        bool transform_then_product =
            from->kind == ElementKind::Transform && is_product(to->kind);
        if (!product_then_transform && !transform_then_product) {
          typed = false;
          result.errors.push_back(make_diagnostic(
              Code::E006,
              "product flow must connect one product and one transform function, got " +
                  std::string(display_name(from->kind)) + " -> " +
                  std::string(display_name(to->kind)),
              subjects, relation_ref(i)));
        }
        break;
      }
    }
    if (decl.from == decl.to) {
      typed = false;
      result.errors.push_back(make_diagnostic(
          Code::E007,
          std::string(relation_word(decl.kind)) + " connects '" + decl.from + "' to itself",
          subjects, relation_ref(i)));
    }
    if (!typed) continue;

    bool bidirectional = decl.kind == RelationKind::Communication && decl.bidirectional;
    model.relations_.push_back(Relation{decl.kind, std::move(decl.from), std::move(decl.to),
                                        bidirectional, std::move(decl.attributes),
                                        model.relations_.size()});
  }

  if (!result.errors.empty()) return result;

  model.incident_.assign(model.elements_.size(), {});
  model.assignments_.assign(model.elements_.size(), {});
  for (const auto& r : model.relations_) {
    std::size_t a = model.by_id_.find(r.from)->second;
    std::size_t b = model.by_id_.find(r.to)->second;
    model.incident_[a].push_back(r.decl_index);
    if (b != a) model.incident_[b].push_back(r.decl_index);
    if (r.kind == RelationKind::Assignment) model.assignments_[a].push_back(r.decl_index);
  }

  result.model = std::move(model);
  return result;
}

LevelResult derive_level(const Element& element, const Model& model) {
  switch (element.kind) {
    case ElementKind::Product:
    case ElementKind::Transform:
      return Level::TechnicalProcess;
    case ElementKind::Sensor:
    case ElementKind::Actuator:
      return Level::FieldDevice;
    case ElementKind::Controller:
    case ElementKind::EdgeDevice:
      return Level::ControlAndMonitoring;
    case ElementKind::LocalComputer:
    case ElementKind::CloudSystem:
      return Level::ComputerAndCloud;
    default:
      break;
  }
  const auto& assigned = model.assignments_of(element.id);
  if (assigned.size() != 1) return std::nullopt;
  const Element& host = model.at(model.relations()[assigned.front()].resource());
  return derive_level(host, model);
}

std::vector<Neighbor> neighbors(const Model& model, std::string_view id,
                                RelationKindSet kinds) {
  std::vector<Neighbor> out;
  for (std::size_t index : model.incident(id)) {
    const Relation& r = model.relations()[index];
    if (!kinds.contains(r.kind)) continue;
    out.push_back(Neighbor{&r, r.from == id ? r.to : r.from});
  }
  return out;
}

RelationKey relation_key(const Relation& relation) {
  if (relation.kind == RelationKind::Communication && relation.bidirectional) {
    auto [lo, hi] = std::minmax(relation.from, relation.to);
    return {relation.kind, lo, hi, true};
  }
  return {relation.kind, relation.from, relation.to, false};
}

}  // namespace gml
