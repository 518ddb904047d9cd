#include "gml/report.hpp"

#include <sstream>

#include <json.hpp>

namespace gml::report {

using nlohmann::ordered_json;

namespace {

std::string dump(const ordered_json& j) {
  return j.dump(2, ' ', false, ordered_json::error_handler_t::replace) + "\n";
}

ordered_json relation_json(const Relation& r) {
  ordered_json rec;
  rec["type"] = to_string(r.kind);
  rec["from"] = r.from;
  rec["to"] = r.to;
  if (r.kind == RelationKind::Communication) rec["bidirectional"] = r.bidirectional;
  return rec;
}

std::string relation_line(const Relation& r) {
  std::string word = r.kind == RelationKind::Communication ? "comm"
                     : r.kind == RelationKind::Assignment  ? "assign"
                                                           : "flow";
  return word + " " + r.from + (r.bidirectional ? " <-> " : " -> ") + r.to;
}

ordered_json level_json(LevelResult level) {
  return level ? ordered_json(to_int(*level)) : ordered_json(nullptr);
}

std::string slot_name(std::size_t slot) {
  if (slot >= 4) return "Undetermined";
  Level level = static_cast<Level>(slot + 1);
  return "Level " + std::to_string(slot + 1) + " - " + std::string(level_name(level));
}

}  // namespace

std::string impact_text(const ImpactReport& report) {
  std::ostringstream out;
  out << "impact of " << report.seed << ": " << report.affected.size() << " element(s)\n";
  for (std::size_t i = 0; i < report.affected.size(); ++i) {
    out << "  " << report.hops[i] << "  " << report.affected[i] << '\n';
  }
  return out.str();
}

std::string impact_json(const ImpactReport& report) {
  ordered_json j;
  j["seed"] = report.seed;
  j["affected"] = ordered_json::array();
  for (std::size_t i = 0; i < report.affected.size(); ++i) {
    j["affected"].push_back({{"id", report.affected[i]}, {"hops", report.hops[i]}});
  }
  j["trace"] = ordered_json::array();
  for (const Relation* r : report.trace) j["trace"].push_back(relation_json(*r));
  return dump(j);
}

std::string architecture_text(const ArchitectureClass& result) {
  return std::string(to_string(result.architecture)) + "\n";
}

std::string architecture_json(const ArchitectureClass& result) {
  ordered_json j;
  j["architecture"] = to_string(result.architecture);
  j["evidence"] = ordered_json::array();
  for (const auto& e : result.evidence) {
    ordered_json rec;
    rec["function"] = e.function;
    rec["host"] = e.host ? ordered_json(*e.host) : ordered_json(nullptr);
    rec["host_kind"] = e.host_kind ? ordered_json(keyword(*e.host_kind)) : ordered_json(nullptr);
    rec["level"] = level_json(e.level);
    j["evidence"].push_back(std::move(rec));
  }
  return dump(j);
}

std::string diff_text(const ModelDiff& changes, const Model& before, const Model& after) {
  std::ostringstream out;
  if (changes.empty()) {
    out << "no changes\n";
    return out.str();
  }
  auto section = [&](const char* title, const std::vector<Element>& elements, const Model& m) {
    if (elements.empty()) return;
    out << title << ":\n";
    for (std::size_t slot = 0; slot < 5; ++slot) {
      bool header = false;
      for (const Element& e : elements) {
        if (level_slot(derive_level(m.at(e.id), m)) != slot) continue;
        if (!header) out << "  " << slot_name(slot) << ":\n";
        header = true;
        out << "    " << keyword(e.kind) << ' ' << e.id << '\n';
      }
    }
  };
  section("added", changes.added_elements, after);
  section("removed", changes.removed_elements, before);
  if (!changes.relabeled.empty()) {
    out << "relabeled:\n";
    for (const auto& c : changes.relabeled) {
      out << "    " << c.id << ": \"" << c.old_label.value_or("") << "\" -> \""
          << c.new_label.value_or("") << "\"\n";
    }
  }
  if (!changes.added_relations.empty()) {
    out << "added relations:\n";
    for (const Relation& r : changes.added_relations) out << "    " << relation_line(r) << '\n';
  }
  if (!changes.removed_relations.empty()) {
    out << "removed relations:\n";
    for (const Relation& r : changes.removed_relations) out << "    " << relation_line(r) << '\n';
  }
  return out.str();
}

std::string diff_json(const ModelDiff& changes, const Model& before, const Model& after) {
  auto elements = [](const std::vector<Element>& list, const Model& m) {
    ordered_json arr = ordered_json::array();
    for (const Element& e : list) {
      arr.push_back({{"id", e.id},
                     {"kind", keyword(e.kind)},
                     {"level", level_json(derive_level(m.at(e.id), m))}});
    }
    return arr;
  };
  auto relations = [](const std::vector<Relation>& list) {
    ordered_json arr = ordered_json::array();
    for (const Relation& r : list) arr.push_back(relation_json(r));
    return arr;
  };
  auto counts = [](const LevelCounts& c) {
    return ordered_json{{"1", c[0]}, {"2", c[1]}, {"3", c[2]}, {"4", c[3]}, {"undetermined", c[4]}};
  };
  ordered_json j;
  j["added_elements"] = elements(changes.added_elements, after);
  j["removed_elements"] = elements(changes.removed_elements, before);
  j["relabeled"] = ordered_json::array();
  for (const auto& c : changes.relabeled) {
    j["relabeled"].push_back(
        {{"id", c.id},
         {"old_label", c.old_label ? ordered_json(*c.old_label) : ordered_json(nullptr)},
         {"new_label", c.new_label ? ordered_json(*c.new_label) : ordered_json(nullptr)}});
  }
  j["added_relations"] = relations(changes.added_relations);
  j["removed_relations"] = relations(changes.removed_relations);
  j["added_per_level"] = counts(changes.added_per_level);
  j["removed_per_level"] = counts(changes.removed_per_level);
  return dump(j);
}

std::string layout_json(const render::LayoutPlan& plan) {
  using render::Shape;
  using render::Stroke;
  ordered_json j;
  j["width"] = plan.width;
  j["height"] = plan.height;
  j["bands"] = ordered_json::array();
  for (const auto& b : plan.bands) {
    j["bands"].push_back({{"level", to_int(b.level)}, {"top", b.top}, {"bottom", b.bottom}});
  }
  j["elements"] = ordered_json::array();
  for (const auto& p : plan.elements) {
    const char* shape = p.shape == Shape::Circle             ? "circle"
                        : p.shape == Shape::RoundedRectangle ? "rounded-rectangle"
                                                             : "rectangle";
    j["elements"].push_back({{"id", p.id},
                             {"shape", shape},
                             {"x", p.center.x},
                             {"y", p.center.y},
                             {"width", p.width},
                             {"height", p.height},
                             {"level", level_json(p.level)},
                             {"gutter", p.gutter}});
  }
  j["relations"] = ordered_json::array();
  for (const auto& r : plan.routes) {
    ordered_json points = ordered_json::array();
    for (const auto& pt : r.points) points.push_back({pt.x, pt.y});
    const char* stroke = r.stroke == Stroke::Solid    ? "solid"
                         : r.stroke == Stroke::Dashed ? "dashed"
                                                      : "dotted";
    j["relations"].push_back({{"relation", r.relation},
                              {"points", points},
                              {"stroke", stroke},
                              {"arrowheads", static_cast<int>(r.arrowheads)}});
  }
  return dump(j);
}

}  // namespace gml::report
