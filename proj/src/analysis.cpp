#include "gml/analysis.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace gml {

bool ImpactReport::contains(std::string_view id) const {
  return std::find(affected.begin(), affected.end(), id) != affected.end();
}

ImpactReport impact(const Model& model, std::string_view seed) {
  const Element& start = model.at(seed);
  ImpactReport report;
  report.seed = start.id;

  std::map<std::string_view, std::size_t> hops{{start.id, 0}};
  std::vector<std::pair<const Element*, std::size_t>> order{{&start, 0}};
  std::deque<const Element*> queue{&start};

  while (!queue.empty()) {
    const Element* current = queue.front();
    queue.pop_front();
    std::size_t depth = hops[current->id];
    for (std::size_t index : model.incident(current->id)) {
      const Relation& r = model.relations()[index];
      bool outgoing = r.from == current->id;
      bool step = r.kind == RelationKind::Assignment || outgoing ||
                  (r.kind == RelationKind::Communication && r.bidirectional);
      if (!step) continue;
      const Element& next = model.at(outgoing ? r.to : r.from);
      if (hops.contains(next.id)) continue;
      hops.emplace(next.id, depth + 1);
      order.emplace_back(&next, depth + 1);
      report.trace.push_back(&r);
      queue.push_back(&next);
    }
  }

  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return a.first->decl_index < b.first->decl_index;
  });
  for (const auto& [element, depth] : order) {
    report.affected.push_back(element->id);
    report.hops.push_back(depth);
  }
  return report;
}

std::string_view to_string(Architecture architecture) {
  switch (architecture) {
    case Architecture::Cloud: return "cloud";
    case Architecture::Edge: return "edge";
    case Architecture::OnPremises: return "on-premises";
    case Architecture::Hybrid: return "hybrid";
    case Architecture::None: return "none";
  }
  return "none";
}

namespace {

enum class HostClass { Cloud, Edge, OnPremises, Other, Unknown };

HostClass host_class(std::optional<ElementKind> kind) {
  if (!kind) return HostClass::Unknown;
  switch (*kind) {
    case ElementKind::CloudSystem: return HostClass::Cloud;
    case ElementKind::Controller:
    case ElementKind::EdgeDevice: return HostClass::Edge;
    case ElementKind::LocalComputer: return HostClass::OnPremises;
    default: return HostClass::Other;
  }
}

}  // namespace

Architecture classify_hosts(const std::vector<std::optional<ElementKind>>& hosts) {
  std::set<HostClass> classes;
  for (const auto& h : hosts) classes.insert(host_class(h));
  classes.erase(HostClass::Unknown);
  if (classes.empty()) return Architecture::None;
  bool any_unknown = std::any_of(hosts.begin(), hosts.end(), [](const auto& h) { return !h; });
  if (any_unknown || classes.size() > 1) return Architecture::Hybrid;
  switch (*classes.begin()) {
    case HostClass::Cloud: return Architecture::Cloud;
    case HostClass::Edge: return Architecture::Edge;
    case HostClass::OnPremises: return Architecture::OnPremises;
    default: return Architecture::Hybrid;
  }
}

ArchitectureClass classify_architecture(const Model& model) {
  ArchitectureClass result;
  std::vector<std::optional<ElementKind>> hosts;
  for (const Element& e : model.elements()) {
    if (e.kind != ElementKind::Train && e.kind != ElementKind::Inference) continue;
    const auto& assigned = model.assignments_of(e.id);
    if (assigned.empty()) {
      hosts.push_back(std::nullopt);
      result.evidence.push_back({e.id, std::nullopt, std::nullopt, std::nullopt});
      continue;
    }
    for (std::size_t index : assigned) {
      const Element& host = model.at(model.relations()[index].resource());
      hosts.push_back(host.kind);
      result.evidence.push_back({e.id, host.id, host.kind, derive_level(host, model)});
    }
  }
  result.architecture = classify_hosts(hosts);
  return result;
}

std::size_t level_slot(LevelResult level) {
  return level ? static_cast<std::size_t>(to_int(*level) - 1) : 4;
}

ModelDiff diff(const Model& before, const Model& after) {
  ModelDiff d;
  for (const Element& e : after.elements()) {
    const Element* old = before.find(e.id);
    if (!old || old->kind != e.kind) {
      d.added_elements.push_back(e);
      d.added_per_level[level_slot(derive_level(e, after))]++;
    } else if (old->label != e.label || old->attributes != e.attributes) {
      d.relabeled.push_back({e.id, old->label, e.label, old->attributes, e.attributes});
    }
  }
  for (const Element& e : before.elements()) {
    const Element* now = after.find(e.id);
    if (!now || now->kind != e.kind) {
      d.removed_elements.push_back(e);
      d.removed_per_level[level_slot(derive_level(e, before))]++;
    }
  }

  // Multiset difference so duplicate communications are accounted for.
  std::map<RelationKey, std::size_t> old_count;
  std::map<RelationKey, std::size_t> new_count;
  for (const Relation& r : before.relations()) old_count[relation_key(r)]++;
  for (const Relation& r : after.relations()) new_count[relation_key(r)]++;
  std::map<RelationKey, std::size_t> matched;
  for (const Relation& r : after.relations()) {
    auto key = relation_key(r);
    if (matched[key]++ >= old_count[key]) d.added_relations.push_back(r);
  }
  matched.clear();
  for (const Relation& r : before.relations()) {
    auto key = relation_key(r);
    if (matched[key]++ >= new_count[key]) d.removed_relations.push_back(r);
  }
  return d;
}

BuildResult apply_diff(const Model& before, const ModelDiff& changes,
                       std::optional<std::string> name) {
  std::set<std::string> removed;
  for (const Element& e : changes.removed_elements) removed.insert(e.id);
  std::map<std::string, const ElementChange*> relabeled;
  for (const ElementChange& c : changes.relabeled) relabeled.emplace(c.id, &c);

  std::vector<ElementDecl> elements;
  for (const Element& e : before.elements()) {
    if (removed.contains(e.id)) continue;
    ElementDecl decl{e.id, e.kind, e.label, e.attributes};
    if (auto it = relabeled.find(e.id); it != relabeled.end()) {
      decl.label = it->second->new_label;
      decl.attributes = it->second->new_attributes;
    }
    elements.push_back(std::move(decl));
  }
  for (const Element& e : changes.added_elements) {
    elements.push_back({e.id, e.kind, e.label, e.attributes});
  }

  std::map<RelationKey, std::size_t> to_remove;
  for (const Relation& r : changes.removed_relations) to_remove[relation_key(r)]++;
  std::vector<RelationDecl> relations;
  for (const Relation& r : before.relations()) {
    auto it = to_remove.find(relation_key(r));
    if (it != to_remove.end() && it->second > 0) {
      it->second--;
      continue;
    }
    relations.push_back({r.kind, r.from, r.to, r.bidirectional, r.attributes});
  }
  for (const Relation& r : changes.added_relations) {
    relations.push_back({r.kind, r.from, r.to, r.bidirectional, r.attributes});
  }
  return build_model(name.value_or(before.name()), std::move(elements), std::move(relations));
}

}  // namespace gml
