#include "gml/validator.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace gml {

const CompatibilityMatrix& default_compatibility() {
  using K = ElementKind;
  static const CompatibilityMatrix matrix = [] {
    const std::set<K> computing{K::Controller, K::EdgeDevice, K::LocalComputer, K::CloudSystem};
    CompatibilityMatrix m;
    m[K::Automate] = {K::Controller, K::EdgeDevice};
    m[K::Record] = {K::Sensor, K::Controller, K::EdgeDevice, K::LocalComputer, K::CloudSystem};
    m[K::Store] = computing;
    m[K::Process] = computing;
    m[K::Train] = computing;
    m[K::Inference] = computing;
    m[K::Transform] = {K::Actuator};
    return m;
  }();
  return matrix;
}

void ValidationConfig::disable(Code code) {
  if (std::find(std::begin(kRuleCodes), std::end(kRuleCodes), code) == std::end(kRuleCodes)) {
    throw ConfigError("rule " + std::string(to_string(code)) + " cannot be disabled");
  }
  disabled_.insert(code);
}

void ValidationConfig::disable(std::string_view code) {
  auto parsed = parse_code(code);
  if (!parsed) throw ConfigError("unknown rule code '" + std::string(code) + "'");
  disable(*parsed);
}

void ValidationConfig::allow(ElementKind function, std::set<ElementKind> resources) {
  if (!is_function(function)) {
    throw ConfigError(std::string(keyword(function)) + " is not a system function kind");
  }
  for (ElementKind r : resources) {
    if (!is_resource(r)) {
      throw ConfigError(std::string(keyword(r)) + " is not a technical resource kind");
    }
  }
  matrix_[function] = std::move(resources);
}

namespace {

DeclRef element_ref(const Element& e) { return {DeclRef::Kind::Element, e.decl_index}; }
DeclRef relation_ref(const Relation& r) { return {DeclRef::Kind::Relation, r.decl_index}; }

std::string level_text(LevelResult level) {
  return level ? "level " + std::to_string(to_int(*level)) : "undetermined level";
}

class Rules {
 public:
  Rules(const Model& model, const ValidationConfig& config) : model_(model), config_(config) {}

  std::vector<Diagnostic> run() {
    assignment_cardinality();
    orphans();
    ai_prerequisites();
    compatibility();
    level_skipping();
    duplicate_communications();

    std::stable_sort(out_.begin(), out_.end(), [](const Diagnostic& a, const Diagnostic& b) {
      if (a.code != b.code) return a.code < b.code;
      return a.origin->index < b.origin->index;
    });
    return std::move(out_);
  }

 private:
  void emit(Code code, std::string message, std::vector<std::string> subjects, DeclRef origin) {
    if (!config_.enabled(code)) return;
    auto d = make_diagnostic(code, std::move(message), std::move(subjects), origin);
    if (config_.strict && (code == Code::W001 || code == Code::W003)) d.severity = Severity::Error;
    out_.push_back(std::move(d));
  }

  // E004 and W001. Transform may have any number of hosts.
  void assignment_cardinality() {
    for (const Element& e : model_.elements()) {
      if (!is_function(e.kind) || e.kind == ElementKind::Transform) continue;
      const auto& assigned = model_.assignments_of(e.id);
      if (assigned.size() > 1) {
        std::vector<std::string> subjects{e.id};
        std::string hosts;
        for (std::size_t index : assigned) {
          const std::string& host = model_.relations()[index].resource();
          subjects.push_back(host);
          hosts += (hosts.empty() ? "" : ", ") + host;
        }
        emit(Code::E004,
             std::string(keyword(e.kind)) + " function is assigned to " +
                 std::to_string(assigned.size()) + " resources (" + hosts +
                 "); only transform functions may have more than one",
             std::move(subjects), element_ref(e));
      } else if (assigned.empty()) {
        emit(Code::W001,
             std::string(keyword(e.kind)) + " function is not assigned to any technical resource",
             {e.id}, element_ref(e));
      }
    }
  }

  void orphans() {
    for (const Element& e : model_.elements()) {
      if (model_.incident(e.id).empty()) {
        emit(Code::W002,
             std::string(display_name(e.kind)) + " takes part in no relation", {e.id},
             element_ref(e));
      }
    }
  }

  void ai_prerequisites() {
    bool has_train = false;
    bool has_store = false;
    for (const Element& e : model_.elements()) {
      has_train = has_train || e.kind == ElementKind::Train;
      has_store = has_store || e.kind == ElementKind::Store;
    }
    for (const Element& e : model_.elements()) {
      if (e.kind == ElementKind::Inference && !has_train) {
        emit(Code::W003, "inference function but the model has no train function", {e.id},
             element_ref(e));
      }
      if (e.kind == ElementKind::Train && !has_store) {
        emit(Code::W004, "train function but the model has no store function for historical data",
             {e.id}, element_ref(e));
      }
    }
  }

  void compatibility() {
    const auto& matrix = config_.compatibility();
    for (const Relation& r : model_.relations()) {
      if (r.kind != RelationKind::Assignment) continue;
      const Element& function = model_.at(r.function());
      const Element& resource = model_.at(r.resource());
      auto allowed = matrix.find(function.kind);
      if (allowed != matrix.end() && allowed->second.contains(resource.kind)) continue;
      emit(Code::W005,
           "implausible assignment of a " + std::string(keyword(function.kind)) +
               " function to a " + std::string(display_name(resource.kind)),
           {function.id, resource.id}, relation_ref(r));
    }
  }

  void level_skipping() {
    for (const Relation& r : model_.relations()) {
      if (r.kind != RelationKind::Communication) continue;
      LevelResult a = derive_level(model_.at(r.from), model_);
      LevelResult b = derive_level(model_.at(r.to), model_);
      if (!a || !b || std::abs(to_int(*a) - to_int(*b)) <= 1) continue;
      emit(Code::W006,
           "communication skips levels (" + level_text(a) + " to " + level_text(b) + ")",
           {relation_subject(r)}, relation_ref(r));
    }
  }

  void duplicate_communications() {
    std::set<RelationKey> seen;
    for (const Relation& r : model_.relations()) {
      if (r.kind != RelationKind::Communication) continue;
      if (!seen.insert(relation_key(r)).second) {
        emit(Code::I001, "duplicate communication between the same endpoints",
             {relation_subject(r)}, relation_ref(r));
      }
    }
  }

  const Model& model_;
  const ValidationConfig& config_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> validate(const Model& model, const ValidationConfig& config) {
  return Rules(model, config).run();
}

}  // namespace gml
